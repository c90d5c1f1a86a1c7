# geometry/__init__.py
from geometry.domains import Ball, Box, ConvexDomain, Halfspace, Polytope, domain_from_dict, hull_domain
from geometry.faces import Face, FaceDecomposition, exposed_faces
from geometry.grid import Grid, ScalarField, boundary_layer, interior_nodes, make_grid
from geometry.measure import CellSet, hausdorff_distance, masked_volume, sublevel_volume
from geometry.subspace import AffineSubspace, dist_to_subspace

__all__ = [
    "Ball", "Box", "ConvexDomain", "Halfspace", "Polytope", "domain_from_dict", "hull_domain",
    "Face", "FaceDecomposition", "exposed_faces",
    "Grid", "ScalarField", "boundary_layer", "interior_nodes", "make_grid",
    "CellSet", "hausdorff_distance", "masked_volume", "sublevel_volume",
    "AffineSubspace", "dist_to_subspace",
]
