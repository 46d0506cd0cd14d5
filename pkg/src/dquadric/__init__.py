"""Exact verification engine for singular loci of icosahedral
quadric-quartic surface intersections."""

__version__ = "0.1.0"
