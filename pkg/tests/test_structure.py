import dataclasses

import pytest

from conftest import cycle_graph, path_graph
from src.generators import FamilySpec, RandomMinDeg2Spec, generate
from src.graph_core import build_graph
from src.structure import (
    AttachmentKind,
    ComponentTag,
    DecompositionError,
    HypothesisReport,
    HypothesisUnmetError,
    NoAttachmentError,
    NotEnoughDisjointCyclesError,
    SearchBudgetExceededError,
    attachment_closure_holds,
    bad_cycles,
    check_hypotheses,
    classify_component,
    cycle_profile,
    disjoint_bad_cycle_decomposition,
    find_attachment,
    iter_attachments,
    iter_cycles,
    residue_floor_check,
    validate_decomposition,
)


def cycles_on(*lengths, extra=()):
    """Disjoint cycles numbered consecutively, plus extra edges and vertices"""
    edges, offset = [], 0
    for t in lengths:
        edges += [(offset + i, offset + (i + 1) % t) for i in range(t)]
        offset += t
    n = max([offset - 1] + [v for e in extra for v in e]) + 1
    return build_graph(n, edges + list(extra))


def test_hypotheses_pass_on_c17():
    report = check_hypotheses(cycle_graph(17), 1)
    assert report.passes
    assert report.forbidden_found == ()


def test_hypotheses_report_every_failure(petersen):
    report = check_hypotheses(petersen, 1)
    assert not report.n_ok
    assert report.delta_ok
    assert len(report.forbidden_found) == 12
    assert not report.passes


def test_hypotheses_minimum_degree():
    report = check_hypotheses(path_graph(20), 1)
    assert report.n_ok and not report.delta_ok


def test_hypotheses_k_zero_allows_five_cycles(c5):
    report = check_hypotheses(cycles_on(5, 5, extra=[(0, 5)]), 0)
    assert report.passes
    assert not check_hypotheses(c5, 0).n_ok


def test_hypotheses_reject_negative_k(c5):
    with pytest.raises(ValueError):
        check_hypotheses(c5, -1)


def test_hypothesis_report_dict_round_trip(petersen):
    report = check_hypotheses(petersen, 1)
    data = report.to_dict()
    assert data["passes"] is False
    assert HypothesisReport.from_dict(data) == report


def test_iter_cycles_budget(c5):
    assert [c.vertices for c in iter_cycles(c5)] == [(0, 1, 2, 3, 4)]
    with pytest.raises(SearchBudgetExceededError):
        list(iter_cycles(c5, budget=0))


def test_bad_cycles_and_profile(two_c5_bridged):
    assert bad_cycles(cycles_on(4, 4, extra=[(0, 4)])) == []
    profile = cycle_profile(two_c5_bridged)
    assert len(profile.bad_cycles) == 2
    assert profile.has_disjoint_pair
    assert profile.zero_cycles == ()
    assert len(profile.two_cycles) == 2


def test_profile_of_single_cycle(c17):
    profile = cycle_profile(c17)
    assert not profile.has_disjoint_pair
    assert [len(c) for c in profile.two_cycles] == [17]


def test_residue_floor_check(c17):
    assert residue_floor_check(c17, 1)
    with pytest.raises(HypothesisUnmetError):
        residue_floor_check(cycle_graph(18), 1)
    with pytest.raises(HypothesisUnmetError):
        residue_floor_check(cycle_graph(5), 1)


def test_find_ear():
    g = cycles_on(6, extra=[(0, 6), (6, 7), (7, 3)])
    attachment = find_attachment(g, range(6))
    assert attachment.kind is AttachmentKind.EAR
    assert attachment.path.vertices == (6, 7)
    assert attachment.anchors == (0,)
    assert attachment.far_anchors == (3,)
    assert attachment_closure_holds(g, range(6), attachment)
    # the reversed ear is not reported twice
    assert len(list(iter_attachments(g, range(6)))) == 1


def test_find_pendant_cycle():
    g = cycles_on(8, 4, extra=[(0, 8)])
    attachment = find_attachment(g, range(8))
    assert attachment.kind is AttachmentKind.PENDANT_CYCLE
    assert attachment.cycle.vertices == (8, 9, 10, 11)
    assert attachment.anchors == (0,)
    assert attachment_closure_holds(g, range(8), attachment)


def test_find_pendant_tailed_cycle():
    g = build_graph(13, [(i, (i + 1) % 8) for i in range(8)]
                    + [(0, 8), (8, 9), (9, 10), (10, 11), (11, 12), (12, 9)])
    attachment = find_attachment(g, range(8))
    assert attachment.kind is AttachmentKind.PENDANT_TAILED_CYCLE
    assert attachment.path.vertices == (8, 9, 10, 11, 12)
    assert attachment.cycle.vertices == (9, 10, 11, 12)
    assert attachment.tail.vertices == (8,)
    assert attachment_closure_holds(g, range(8), attachment)


def test_closure_rejects_covered_path():
    g = cycles_on(8, 4, extra=[(0, 8)])
    attachment = find_attachment(g, range(8))
    assert not attachment_closure_holds(g, range(9), attachment)


def test_no_attachment():
    g = cycles_on(6, extra=[(0, 6), (6, 7)])
    with pytest.raises(NoAttachmentError):
        find_attachment(g, range(6))
    with pytest.raises(NoAttachmentError):
        find_attachment(g, range(8))


def test_classify_single_cycles():
    assert classify_component(cycle_graph(6)).tag is ComponentTag.F0
    assert classify_component(cycle_graph(5)).tag is ComponentTag.OTHER
    assert classify_component(cycle_graph(4)).tag is ComponentTag.OTHER
    assert classify_component(path_graph(4)).tag is ComponentTag.OTHER


def test_classify_f22(two_c5_bridged):
    cls = classify_component(two_c5_bridged)
    assert cls.tag is ComponentTag.F22
    assert not cls.is_strong
    assert cls.connectors[0].vertices == (0, 5)
    assert cls.cycles[0][0] == 0 and cls.cycles[1][0] == 5


@pytest.mark.parametrize("g, first_start", [
    (cycles_on(5, 6, extra=[(0, 5)]), 0),
    (cycles_on(6, 5, extra=[(0, 6)]), 6),
])
def test_classify_f02_puts_two_cycle_first(g, first_start):
    cls = classify_component(g)
    assert cls.tag is ComponentTag.F02
    assert len(cls.cycles[0]) == 5
    assert cls.cycles[0][0] == first_start
    assert cls.connectors[0].first == first_start


def test_classify_brs_pairs():
    hubbed = cycles_on(5, 5, extra=[(0, 10), (10, 5)])
    cls = classify_component(hubbed)
    assert (cls.tag, cls.r, cls.s, cls.special_vertex) == (ComponentTag.BRS, 0, 2, 10)
    assert cls.is_strong

    tailed = cycles_on(5, 5, extra=[(0, 10), (10, 11), (11, 5)])
    cls = classify_component(tailed)
    assert cls.label() == "B(1,1)"
    assert cls.special_vertex == 11
    assert cls.tailed[0].tail.vertices == (10,)
    assert cls.tailed[0].cycle[0] == 0


def test_classify_star():
    star = cycles_on(5, 5, 5, extra=[(15, 0), (15, 5), (15, 10)])
    cls = classify_component(star)
    assert cls.label() == "B(0,3)"
    assert not cls.is_strong
    assert sorted(c[0] for c in cls.near_cycles) == [0, 5, 10]

    with_tail = cycles_on(5, 5, 5, extra=[(15, 0), (15, 5), (15, 16), (16, 10)])
    cls = classify_component(with_tail)
    assert cls.label() == "B(1,2)"
    assert cls.is_strong
    assert cls.tailed[0].tail.vertices == (16,)
    assert cls.tailed[0].cycle[0] == 10


def test_classify_f3():
    g = cycles_on(5, 6, 5, 5, extra=[(0, 5), (11, 16), (13, 21), (21, 8)])
    cls = classify_component(g)
    assert cls.tag is ComponentTag.F3
    assert cls.is_strong
    assert [len(c) for c in cls.cycles] == [5, 6, 5, 5]
    assert cls.connectors[0].vertices == (0, 5)
    assert cls.connectors[1].vertices == (11, 16)
    assert cls.connectors[2].vertices == (8, 21, 13)


def test_classify_rejects_extra_edges(two_c5_bridged):
    g = build_graph(10, list(two_c5_bridged.edges) + [(2, 7)])
    assert classify_component(g).tag is ComponentTag.OTHER


@pytest.mark.parametrize("g, labels, g1_size", [
    (cycles_on(5, 5, extra=[(0, 5)]), ["F22"], 0),
    (cycles_on(5, 6, extra=[(0, 5)]), ["F02"], 0),
    (cycles_on(5, 5, 4, extra=[(0, 5), (2, 10)]), ["F22"], 4),
    (cycles_on(8, 8, 8, extra=[(24, 0), (24, 8), (24, 16)]), ["B(0,3)"], 0),
    (cycles_on(5, 6, 5, 5, extra=[(0, 5), (11, 16), (6, 21), (21, 12)]), ["F3"], 0),
])
def test_decomposition(g, labels, g1_size):
    decomposition = disjoint_bad_cycle_decomposition(g)
    assert decomposition.summary() == labels
    assert len(decomposition.g1_vertices) == g1_size
    validate_decomposition(g, decomposition)


def test_decomposition_needs_disjoint_pair(c17):
    with pytest.raises(NotEnoughDisjointCyclesError):
        disjoint_bad_cycle_decomposition(c17)


def test_validate_decomposition_catches_gaps(two_c5_bridged):
    decomposition = disjoint_bad_cycle_decomposition(two_c5_bridged)
    component = decomposition.g2_components[0]
    broken = dataclasses.replace(component, vertices=component.vertices - {9})
    with pytest.raises(DecompositionError):
        validate_decomposition(two_c5_bridged, dataclasses.replace(decomposition, g2_components=(broken,)))


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(50))
def test_decomposition_of_random_graphs(seed):
    for attempt in range(100):
        g = generate(FamilySpec(RandomMinDeg2Spec(15 + seed % 6, 0.2, k_filter=1), seed=1000 * seed + attempt))
        if cycle_profile(g).has_disjoint_pair:
            break
    else:
        pytest.fail(f"no graph with two disjoint bad cycles for seed {seed}")
    decomposition = disjoint_bad_cycle_decomposition(g)
    validate_decomposition(g, decomposition)
    assert all(c.cls.tag is not ComponentTag.OTHER for c in decomposition.g2_components)
