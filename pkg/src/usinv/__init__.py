"""usinv: exact-arithmetic toolkit for unipotent subgroups normalized by a
maximal torus — closed root subsets, wedge embeddings, Lie stabilizers,
graded invariants, and one-parameter limit screening."""

__version__ = "0.1.0"
