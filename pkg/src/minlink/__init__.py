"""Minimum-link paths and link-distance maps in polygonal domains with holes."""

from .geom import Coord, Direction, Point, Segment, along, coord, direction, orient, pt, seg, segments_intersect
from .domain import (AXES, DomainInstance, OrientationSet, PolygonalDomain,
                     is_c_oriented, load_instance, orientation_set,
                     save_instance, validate)

__all__ = [
    "Coord", "Direction", "Point", "Segment", "along", "coord", "direction",
    "orient", "pt", "seg", "segments_intersect",
    "AXES", "DomainInstance", "OrientationSet", "PolygonalDomain",
    "is_c_oriented", "load_instance", "orientation_set", "save_instance",
    "validate",
]
