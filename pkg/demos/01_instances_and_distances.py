"""
Loading instances and building distance matrices
================================================

"""

import pathlib

import numpy as np

from sinepath.instances import (
    build_distance_matrix,
    load_instance,
    random_planar_instance,
    serialize_tsplib,
)

HERE = pathlib.Path(__file__).resolve().parent
DATA = HERE.parent / "data"
OUT = HERE / "out"
OUT.mkdir(exist_ok=True)

# A planar file in the usual NODE_COORD_SECTION layout.
tri = load_instance(DATA / "tri3.tsp")
print(f"{tri.name}: {tri.dimension} nodes, metric {tri.metric.value}")
d = build_distance_matrix(tri)
print("distance matrix:")
print(d)

# Geographic instances come from a three-column csv and use great-circle
# kilometres instead of planar units.
geo = load_instance(DATA / "geo50.csv")
dg = build_distance_matrix(geo)
print(f"\n{geo.name}: {geo.dimension} stations, "
      f"longest leg {dg.max():.1f} km, shortest {dg[dg > 0].min():.1f} km")

# Synthetic instances are seeded, so a (n, seed) pair names the geometry
# forever.  clusters > 0 draws towns around random centers.
inst = random_planar_instance(30, seed=7, clusters=3, name="demo30")
print(f"\n{inst.name}: bounding box "
      f"x [{inst.coords[:, 0].min():.1f}, {inst.coords[:, 0].max():.1f}] "
      f"y [{inst.coords[:, 1].min():.1f}, {inst.coords[:, 1].max():.1f}]")

# Round-tripping through the serializer reproduces coordinates exactly.
path = OUT / "demo30.tsp"
path.write_text(serialize_tsplib(inst))
again = load_instance(path)
assert np.array_equal(inst.coords, again.coords)
print(f"wrote {path} and re-read it bit-exact")
