"""Smoke test for the pymalcev extension module.

Build first with `pip install --no-build-isolation -e crates/python`.
"""

from fractions import Fraction

import pymalcev as pm


def check_coxeter():
    g = pm.CoxeterGraph("a0 a1\n4\n")
    assert g.vertices == ["a0", "a1"]
    assert g.ab_rank() == 2
    assert g.lower_central()["gr2"]["invariant_factors"] == [2]

    a3 = pm.CoxeterGraph("s1 s2 s3\n3 2\n3\n")
    assert a3.ab_rank() == 1
    assert a3.odd_partition() == [["s1", "s2", "s3"]]
    assert a3.lower_central()["gr2"]["display"] == "0"
    assert a3.relators_map_to_one(6)

    assert pm.CoxeterGraph.dihedral(6).quotient_graph().is_right_angled()
    try:
        pm.CoxeterGraph("a b\n1\n")
    except ValueError:
        pass
    else:
        raise AssertionError("label 1 accepted")


def check_presentations():
    gr = pm.lower_central("s t\ns t s t s t S T S T S T\n")
    assert gr["gr2"]["display"] == "Z/3"
    for e in (2, 4, 6, 12):
        d = pm.dihedral(e)
        assert d["h2_map"] == [[e // 2]]
        assert d["agrees"]


def check_series():
    alg = pm.RaagAlgebra(["x", "y", "z"], [("x", "y")], degree=5)
    assert alg.hilbert_series() == ["1", "3", "8", "21", "55", "144"]
    x, y, z = (alg.generator(v) for v in "xyz")
    assert x * y == y * x and x * z != z * x
    assert x.bracket(z).coefficient(["x", "z"]) == Fraction(1)

    u = x + z.scale(1, 2)
    g = u.exp()
    assert g.is_grouplike()
    assert g.log() == u
    w = pm.bch(x, z)
    assert w.is_primitive()
    assert w.coefficient(["x", "z"]) == Fraction(1, 2)
    assert w.exp() == x.exp() * z.exp()


def check_reflection():
    c = pm.classify("G(4,2,2)")
    assert c["c"] == 3
    assert c["descriptor"]["tag"] == "Q × (F₂ ⊗ Q)"
    assert pm.classify("G(3,3,4)")["c"] == 1
    assert pm.classify("G15")["c"] == 3
    assert [len(o) for o in pm.hyperplane_orbits("G(4,2,2)")] == [2, 2, 2]


if __name__ == "__main__":
    check_coxeter()
    check_presentations()
    check_series()
    check_reflection()
    print("smoke test ok")
