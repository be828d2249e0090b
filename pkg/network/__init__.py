from .chart import NetworkChart, chart_from_path, plucker_table
from .flows import Flow, enumerate_flows, flow_weight, minimal_flow_rec, plucker_polynomial
from .orientation import (
    OrientationError,
    PerfectOrientation,
    acyclic_orientation,
    rectangles_network,
    search_acyclic_orientation,
)
