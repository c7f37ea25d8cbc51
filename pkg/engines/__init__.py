"""
VOA Engines
Exact computation engines for lattice vertex operator algebras, their
θ-twisted modules and Zhu algebras, plus the verification suites built on them.
"""
