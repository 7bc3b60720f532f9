"""Smoke test for the zkerov extension module.

Build and place the module next to this script first:

    cargo build --release -p zkerov-py
    cp target/release/libzkerov_py.so python/zkerov.so
"""

import os
import sys
from fractions import Fraction

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import zkerov  # noqa: E402


def main():
    assert [zkerov.gluing_count(n) for n in range(1, 6)] == [1, 3, 15, 105, 945]
    assert len(zkerov.enumerate_gluings(3)) == 15

    hexagon = zkerov.Gluing(3, [(0, 3), (1, 4), (2, 5)])
    m = hexagon.glue()
    assert m.vertex_count == 2 and m.doubled_genus == 2
    assert m.degrees() == [3, 3]
    assert hexagon.stabilizer_order() == 3
    assert hexagon.rotate(1) == hexagon
    assert m.admissible_colorings() == [({0: 2}, (2,))]
    assert m.black_vertices() == [0] and m.white_vertices() == [1]
    assert m.hall_condition({0: 2}) and m.orientation_walk_condition({0: 2})

    raw, value = zkerov.coefficient(6, [3, 2], threads=2)
    assert (raw, value) == (143, Fraction(143))
    assert zkerov.genus1(8) == {(7,): 574, (5, 2): 712, (4, 3): 1052, (3, 2, 2): 510}
    assert zkerov.genus1(2) == {}

    z2 = zkerov.expand(2, threads=1)
    assert z2 == {0: {(3,): Fraction(4)}, 1: {(2,): Fraction(-2)}}
    z6 = zkerov.expand(6)
    assert z6[3][(4,)] == Fraction(-701, 2)

    classes = zkerov.census(3, bipartite=True)
    assert [(c["orbitSize"], c["stabilizerOrder"]) for c in classes] == [(3, 1), (1, 3)]
    twisted = sum(len(zkerov.census(n, reduced=True, twisted=True)) for n in (1, 2, 3))
    assert twisted == 5

    try:
        zkerov.coefficient(3, [1, 2])
    except ValueError:
        pass
    else:
        raise AssertionError("parts below 2 must be rejected")

    results = zkerov.selftest(5)
    assert len(results) == 11 and all(r[2] for r in results), results
    print("python smoke test passed")


if __name__ == "__main__":
    main()
