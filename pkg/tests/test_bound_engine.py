import dataclasses
from fractions import Fraction

import pytest

from conftest import cycle_graph
from src.bound_engine import (
    BoundCertificate,
    BoundViolatedError,
    InvalidWitnessError,
    NotStrongClassError,
    RouteLabel,
    TooLargeForFallbackError,
    WrongClassError,
    bound_terms,
    certify_bound,
    construct_bound_triple,
    differential_ok,
    triple_for_nonstrong_component,
    triple_for_strong_component,
    within_bound,
)
from src.generators import FamilySpec, RandomMinDeg2Spec, family_suite, generate
from src.graph_core import build_graph
from src.oracle import gamma_r_exact
from src.rdf_core import RomanFunction, validate_triple
from src.settings import Settings
from src.structure import HypothesisUnmetError, check_hypotheses, classify_component


def cycles_on(*lengths, extra=()):
    edges, offset = [], 0
    for t in lengths:
        edges += [(offset + i, offset + (i + 1) % t) for i in range(t)]
        offset += t
    n = max([offset - 1] + [v for e in extra for v in e]) + 1
    return build_graph(n, edges + list(extra))


def test_bound_arithmetic():
    assert bound_terms(17, 1) == (204, 17)
    assert within_bound(12, 17, 1)
    assert not within_bound(13, 17, 1)
    assert within_bound(8, 11, 0)
    assert differential_ok(12, 17, 1)
    assert not differential_ok(13, 17, 1)


def test_c17_is_tight(c17):
    cert = construct_bound_triple(c17, 1)
    assert cert.route is RouteLabel.TH3
    assert cert.witness_weight == 12
    assert cert.bound == 12
    assert cert.tight
    assert cert.differential_lower == 5
    assert cert.checks == {"rdf_valid": True, "bound_ok": True, "gallai_ok": True}


@pytest.mark.parametrize("g, k, route, weight", [
    (cycle_graph(16), 1, RouteLabel.TH1, 11),
    (cycle_graph(18), 1, RouteLabel.TH2, 12),
    (cycles_on(8, 8, extra=[(0, 8)]), 1, RouteLabel.MAIN, 11),
    (cycles_on(8, 8, 8, extra=[(24, 0), (24, 8), (24, 16)]), 1, RouteLabel.MAIN, 17),
])
def test_routes_end_to_end(g, k, route, weight):
    cert = construct_bound_triple(g, k)
    assert cert.route is route
    assert cert.witness_weight == weight
    assert all(cert.checks.values())
    assert certify_bound(g, k, cert)


def test_f02_end_to_end():
    g = cycles_on(5, 6, extra=[(0, 5)])
    cert = construct_bound_triple(g, 0)
    assert cert.route is RouteLabel.MAIN
    assert cert.witness_weight <= 7


def test_petersen_certified(petersen):
    cert = construct_bound_triple(petersen, 0)
    assert cert.witness_weight <= 7
    assert all(cert.checks.values())


def test_hypotheses_enforced(c5):
    with pytest.raises(HypothesisUnmetError):
        construct_bound_triple(c5, 1)
    with pytest.raises(HypothesisUnmetError):
        construct_bound_triple(cycles_on(17, 17), 1)


def test_oracle_only_settings(c17):
    cert = construct_bound_triple(c17, 1, Settings(routes=[{"name": "oracle"}]))
    assert cert.route is RouteLabel.ORACLE
    assert cert.witness_weight == 12
    with pytest.raises(TooLargeForFallbackError):
        construct_bound_triple(c17, 1, Settings(oracle_limit=10, routes=[{"name": "oracle"}]))


def test_certify_rejects_tampering(c17):
    cert = construct_bound_triple(c17, 1)
    ones = RomanFunction(c17, (1,) * 17)
    with pytest.raises(InvalidWitnessError):
        certify_bound(c17, 1, dataclasses.replace(cert, witness=ones))
    with pytest.raises(BoundViolatedError) as info:
        certify_bound(c17, 1, dataclasses.replace(cert, witness=ones, witness_weight=17))
    assert info.value.graph_dump.startswith("17 17\n")
    zeros = RomanFunction(c17, (0,) * 17)
    with pytest.raises(InvalidWitnessError):
        certify_bound(c17, 1, dataclasses.replace(cert, witness=zeros, witness_weight=0))
    with pytest.raises(InvalidWitnessError):
        certify_bound(c17, 0, cert)


def test_certificate_dict_round_trip(c17):
    cert = construct_bound_triple(c17, 1)
    data = cert.to_dict()
    assert data["bound"] == {"num": 12, "den": 1}
    assert data["route"] == "Th3"
    assert data["tight"] is True
    assert BoundCertificate.from_dict(data, c17) == cert
    data["bound"] = {"num": 13, "den": 1}
    with pytest.raises(InvalidWitnessError):
        BoundCertificate.from_dict(data, c17)


def test_bound_fraction_reduces():
    cert = construct_bound_triple(cycle_graph(16), 1)
    assert cert.bound == Fraction(192, 17)
    assert not cert.tight


def assert_component(h, anchored, weight):
    report = validate_triple(h, anchored.triple)
    assert report.all_valid
    assert report.weight_total == weight
    assert weight <= anchored.weight_claimed
    assert anchored.strong_claimed <= report.strong_set


def test_strong_f0():
    h = cycle_graph(6)
    anchored = triple_for_strong_component(h, classify_component(h), 1)
    assert_component(h, anchored, 12)


def test_strong_f02():
    h = cycles_on(5, 6, extra=[(0, 5)])
    anchored = triple_for_strong_component(h, classify_component(h), 0)
    assert_component(h, anchored, 23)
    assert anchored.strong_claimed == frozenset(h.vertices())


def test_strong_f3():
    h = cycles_on(5, 6, 5, 5, extra=[(0, 5), (11, 16), (13, 21), (21, 8)])
    anchored = triple_for_strong_component(h, classify_component(h), 0)
    assert_component(h, anchored, 47)
    assert anchored.strong_claimed == frozenset(h.vertices())


@pytest.mark.parametrize("h, weight", [
    (cycles_on(5, 5, extra=[(0, 10), (10, 5)]), 24),
    (cycles_on(5, 5, extra=[(0, 10), (10, 11), (11, 5)]), 26),
    (cycles_on(5, 5, 5, extra=[(15, 0), (15, 5), (15, 16), (16, 10)]), 37),
])
def test_strong_brs(h, weight):
    cls = classify_component(h)
    anchored = triple_for_strong_component(h, cls, 0)
    assert anchored.weight_claimed == 2 * h.n + cls.r + cls.s
    assert_component(h, anchored, weight)


def test_strong_rejects_weak_class(two_c5_bridged):
    with pytest.raises(NotStrongClassError):
        triple_for_strong_component(two_c5_bridged, classify_component(two_c5_bridged), 0)


def test_star_component():
    h = cycles_on(5, 5, 5, extra=[(15, 0), (15, 5), (15, 10)])
    anchored = triple_for_nonstrong_component(h, classify_component(h), 0)
    assert anchored.weight_claimed == 33
    assert_component(h, anchored, 33)
    assert 15 in anchored.strong_claimed


def test_f22_single_function(two_c5_bridged):
    anchored = triple_for_nonstrong_component(two_c5_bridged, classify_component(two_c5_bridged), 0)
    assert_component(two_c5_bridged, anchored, 21)
    assert validate_triple(two_c5_bridged, anchored.triple).weights == (7, 7, 7)
    assert anchored.strong_claimed == frozenset({0, 3, 7})


def test_f22_all_strong(two_c5_bridged):
    cls = classify_component(two_c5_bridged)
    anchored = triple_for_nonstrong_component(two_c5_bridged, cls, 0, all_strong=True)
    assert_component(two_c5_bridged, anchored, 22)
    assert anchored.strong_claimed == frozenset(range(10))


def test_f22_with_pendant_cycle(two_c5_bridged):
    h = build_graph(14, list(two_c5_bridged.edges) + [(10, 11), (11, 12), (12, 13), (13, 10), (2, 10)])
    anchored = triple_for_nonstrong_component(h, classify_component(two_c5_bridged), 0)
    assert_component(h, anchored, 30)
    assert anchored.strong_claimed == frozenset(range(13))


def test_nonstrong_rejects_other_classes():
    h = cycle_graph(6)
    with pytest.raises(WrongClassError):
        triple_for_nonstrong_component(h, classify_component(h), 0)


@pytest.mark.slow
def test_family_suite_against_oracle():
    for g, spec in family_suite(1, 20, random_count=0):
        if not g.is_connected() or not check_hypotheses(g, 1).passes:
            continue
        cert = construct_bound_triple(g, 1)
        exact = gamma_r_exact(g).value
        assert exact <= cert.witness_weight, spec.describe()
        assert exact * 17 <= 12 * g.n


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(100))
def test_random_graphs_k0(seed):
    g = generate(FamilySpec(RandomMinDeg2Spec(9 + seed % 12, 0.25, k_filter=0), seed=seed))
    cert = construct_bound_triple(g, 0)
    exact = gamma_r_exact(g).value
    assert exact <= cert.witness_weight
    assert exact * 11 <= 8 * g.n
    assert (g.n - cert.witness_weight) * 11 >= 3 * g.n


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(100))
def test_random_graphs_k1(seed):
    g = generate(FamilySpec(RandomMinDeg2Spec(15 + seed % 8, 0.2, k_filter=1), seed=seed))
    assert check_hypotheses(g, 1).passes
    cert = construct_bound_triple(g, 1)
    assert all(cert.checks.values())
    assert certify_bound(g, 1, cert)
    exact = gamma_r_exact(g).value
    assert exact <= cert.witness_weight
    assert exact * 17 <= 12 * g.n
