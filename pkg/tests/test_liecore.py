import random

import pytest

from diracforge.errors import IncompatiblePair, SystemMismatch, UnsupportedType
from diracforge.liecore import (EqualRankPair, buildRootSystem, equalRankPair,
                                innerProduct, makeDominant, pairFromLabel,
                                systemFromJSON, systemFromLabel, weightFromStrings,
                                weightToStrings, weylOrbit)
from diracforge.rationals import rat

ALL_LABELS = ["A1", "A2", "A3", "A4", "B2", "C2", "D4", "T1", "T4",
              "A1xT1", "A1xA1", "A2xT2"]

POSITIVE_ROOT_COUNTS = {"A1": 1, "A2": 3, "A3": 6, "A4": 10,
                        "B2": 4, "C2": 4, "D4": 12, "T1": 0, "T4": 0,
                        "A1xT1": 1, "A1xA1": 2, "A2xT2": 3}

WEYL_ORDERS = {"A1": 2, "A2": 6, "A3": 24, "A4": 120, "B2": 8, "C2": 8,
               "D4": 192, "T1": 1, "T4": 1, "A1xT1": 2, "A1xA1": 4, "A2xT2": 6}


def rand_weight(rs, rng, denom=4, span=6):
    return tuple(rat(rng.randint(-span, span), rng.randint(1, denom))
                 for _ in range(rs.rank))


@pytest.mark.parametrize("label", ALL_LABELS)
def test_construction_invariants(label):
    rs = systemFromLabel(label)
    n = len(rs.simple_positions)
    for i in range(n):
        assert rs.cartanMatrix[i][i] == 2
        for j in range(n):
            if i != j:
                assert rs.cartanMatrix[i][j] <= 0
    assert len(rs.positiveRoots) == POSITIVE_ROOT_COUNTS[label]
    # the two computations of rho must agree
    assert rs.rhoFromPositiveRoots() == rs.rho
    # long roots have squared length 2 in each simple factor
    if rs.positiveRoots:
        assert max(rs.norm2(a) for a in rs.positiveRoots) == 2
    assert rs.weylGroupOrder() == WEYL_ORDERS[label]


@pytest.mark.parametrize("label", ALL_LABELS)
def test_gram_positive_definite_sampled(label):
    rs = systemFromLabel(label)
    rng = random.Random(20260818)
    for _ in range(25):
        v = rand_weight(rs, rng)
        if any(v):
            assert rs.norm2(v) > 0


def test_build_examples():
    a1 = buildRootSystem("A", 1)
    assert len(a1.positiveRoots) == 1
    assert a1.rho == (rat(1),)
    assert a1.norm2(a1.rho) == rat(1, 2)

    a2 = buildRootSystem("A", 2)
    assert len(a2.positiveRoots) == 3
    assert a2.rho == (rat(1), rat(1))

    t1 = buildRootSystem("Torus", 1)
    assert t1.positiveRoots == ()
    assert t1.rho == (rat(0),)


def test_unsupported():
    for fam, rank in [("A", 5), ("A", 0), ("B", 3), ("C", 1), ("D", 5),
                      ("E", 8), ("Torus", 5)]:
        with pytest.raises(UnsupportedType):
            buildRootSystem(fam, rank)


def test_inner_product_examples():
    a1 = systemFromLabel("A1")
    alpha = a1.simpleRoots[0]
    assert innerProduct(a1, alpha, alpha) == 2
    assert innerProduct(a1, a1.rho, a1.rho) == rat(1, 2)
    a2 = systemFromLabel("A2")
    assert innerProduct(a2, a2.rho, a2.rho) == 2
    with pytest.raises(SystemMismatch):
        innerProduct(a2, a2.rho, (rat(1),))


def test_make_dominant_examples():
    a1 = systemFromLabel("A1")
    dom, w = makeDominant(a1, (rat(-3),))
    assert dom == (rat(3),) and w.word == (0,) and w.sign == -1
    dom, w = makeDominant(a1, (rat(0),))
    assert dom == (rat(0),) and w.word == () and w.sign == 1

    a2 = systemFromLabel("A2")
    dom, w = makeDominant(a2, (rat(-1), rat(2)))
    assert a2.isDominant(dom)
    assert w.sign == (-1) ** len(w.word)
    # applying the stored word reproduces the reduction
    v = (rat(-1), rat(2))
    for i in w.word:
        v = a2.reflect(i, v)
    assert v == dom


@pytest.mark.parametrize("label", ["A2", "B2", "C2", "D4", "A1xT1"])
def test_make_dominant_idempotent(label):
    rs = systemFromLabel(label)
    rng = random.Random(77)
    for _ in range(30):
        lam = rand_weight(rs, rng)
        dom, _ = rs.makeDominant(lam)
        dom2, w2 = rs.makeDominant(dom)
        assert dom2 == dom and w2.word == ()


def test_is_regular_examples():
    a1 = systemFromLabel("A1")
    assert a1.isRegular((rat(1),))
    assert not a1.isRegular((rat(0),))
    a2 = systemFromLabel("A2")
    assert not a2.isRegular((rat(1), rat(0)))
    assert a2.isRegular(a2.rho)


def test_weyl_orbit_examples():
    a1 = systemFromLabel("A1")
    assert a1.weylOrbit((rat(2),)) == [(rat(-2),), (rat(2),)]
    assert a1.weylOrbit((rat(0),)) == [(rat(0),)]
    a2 = systemFromLabel("A2")
    assert len(a2.weylOrbit(a2.rho)) == 6


@pytest.mark.parametrize("label", ["A2", "B2", "C2", "A1xA1"])
def test_orbit_size_divides_group_order(label):
    rs = systemFromLabel(label)
    order = rs.weylGroupOrder()
    rng = random.Random(5)
    for _ in range(20):
        lam = rand_weight(rs, rng, denom=2, span=3)
        size = len(rs.weylOrbit(lam))
        assert order % size == 0
        assert (size == order) == rs.isRegular(lam)


@pytest.mark.parametrize("label", ["A2", "B2", "C2", "D4"])
def test_gram_weyl_invariance(label):
    rs = systemFromLabel(label)
    rng = random.Random(99)
    for _ in range(15):
        lam = rand_weight(rs, rng)
        mu = rand_weight(rs, rng)
        ip = rs.innerProduct(lam, mu)
        for i in range(len(rs.simple_positions)):
            assert rs.innerProduct(rs.reflect(i, lam), rs.reflect(i, mu)) == ip


def test_signed_orbit_balance():
    a2 = systemFromLabel("A2")
    signed = a2.signedOrbit(a2.rho)
    assert len(signed) == 6
    assert sum(s for _, s in signed) == 0


def test_json_roundtrip():
    rs = systemFromLabel("A2xT1")
    doc = rs.to_json()
    assert doc == {"factors": [{"family": "A", "rank": 2},
                               {"family": "Torus", "rank": 1}]}
    rs2 = systemFromJSON(doc)
    assert rs2 == rs
    lam = (rat(1, 2), rat(-3), rat(2))
    assert weightFromStrings(weightToStrings(lam)) == lam


def test_root_coefficients():
    a2 = systemFromLabel("A2")
    # highest root of A2 is alpha_1 + alpha_2 = omega_1 + omega_2
    assert a2.rootCoefficients((rat(1), rat(1))) == (rat(1), rat(1))
    assert a2.rootCoefficients((rat(1), rat(0))) == (rat(2, 3), rat(1, 3))


def test_pair_torus():
    pair = pairFromLabel("A1:T")
    assert pair.h.factors == (("Torus", 1),)
    # the subgroup inherits the ambient gram, not the standalone identity
    assert pair.h.gram == [[rat(1, 2)]]
    assert pair.shift == (rat(1),)
    assert pair.pRoots == ((rat(2),),)
    assert pair.weightToH((rat(5),)) == (rat(5),)


def test_pair_u2():
    pair = pairFromLabel("A2:u2")
    assert pair.h.label == "A1xT1"
    assert pair.h.gram == [[rat(1, 2), rat(0)], [rat(0), rat(1, 6)]]
    assert pair.rhoG_H == (rat(1), rat(3))
    assert pair.shift == (rat(0), rat(3))
    assert sorted(pair.pWeightsH()) == [(rat(-1), rat(3)), (rat(1), rat(3))]
    # round trip through the shared torus coordinates
    rng = random.Random(3)
    for _ in range(10):
        lam = rand_weight(pair.g, rng)
        assert pair.weightToG(pair.weightToH(lam)) == lam
    # the image of the G-weight lattice is the congruence sublattice q = m mod 2
    m, q = pair.weightToH((rat(1), rat(0)))
    assert (q - m) % 2 == 0


def test_pair_trivial_and_errors():
    pf = pairFromLabel("A1:full")
    assert pf.isTrivial() and pf.pRoots == ()
    assert pf.shift == (rat(0),)
    with pytest.raises(IncompatiblePair):
        equalRankPair(systemFromLabel("B2"), "keep=0")
    with pytest.raises(IncompatiblePair):
        pairFromLabel("A1")


def test_pair_keep_subsets_integral():
    a3 = systemFromLabel("A3")
    p = equalRankPair(a3, "keep=0,2")
    assert p.h.label == "A1xA1xT1"
    rng = random.Random(11)
    for _ in range(20):
        lam = tuple(rat(rng.randint(-4, 4)) for _ in range(3))
        lamH = p.weightToH(lam)
        # integral G-weights land on integral H-coordinates
        assert all(c.denominator == 1 for c in lamH)
        assert p.weightToG(lamH) == lam
