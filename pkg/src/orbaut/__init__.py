"""Exact computation of automorphism-group data for the holomorphic
ℤ₂-orbifolds of Niemeier lattice vertex operator algebras.

Submodules: `exactmat` (fraction matrices), `lattice` (integral lattices),
`abelian` (finite abelian groups), `rootdata` (ADE root systems and glue
labels), `codeaut` (backtracking stabilizer search for code symmetries),
`niemeier` (the 24 rank-24 even unimodular lattices), `affine` (affine Lie
ideals, simple currents, module dictionaries), `orbifold` (the per-lattice
pipeline: C_N, Aut(C_N), K(V), Out groups, summary table), `groupid`
(permutation-group naming), `cli` (command-line front end).
"""

__version__ = "1.0.0"
