"""End-to-end checks that the Python bindings expose the library faithfully.

The numeric fixtures mirror the C++ regression values, so a failure here
points at the binding layer rather than the math.
"""

import pytest

import evicomb as ec


def frame3():
    return ec.Frame(["rock", "paper", "scissors"])


def test_frame_basics():
    f = frame3()
    assert len(f) == 3
    assert f.labels == ["rock", "paper", "scissors"]
    assert f.label(1) == "paper"
    assert f.index_of("scissors") == 2
    assert f.find("lizard") is None
    with pytest.raises(ec.FrameError):
        f.index_of("lizard")
    # Frames compare by identity, not by labels.
    assert f.same_as(f)
    assert not f.same_as(frame3())
    with pytest.raises(ec.Error):
        ec.Frame([])


def test_general_combination():
    f = frame3()
    m1 = ec.MassFunction.from_labels(f, [(["rock"], 0.8), (f.labels, 0.2)])
    m2 = ec.MassFunction.from_labels(f, [(["paper"], 0.9), (f.labels, 0.1)])
    assert ec.conflict(m1, m2) == pytest.approx(0.72)

    combined = ec.combine_pair(m1, m2)
    assert combined.mass(ec.Subset.of_labels(f, ["rock"])) == pytest.approx(0.08 / 0.28)
    assert ec.belief(combined, ["paper"]) == pytest.approx(0.18 / 0.28)
    assert ec.plausibility(combined, ["rock"]) == pytest.approx(
        0.08 / 0.28 + 0.02 / 0.28
    )

    # The vacuous mass function is the neutral element.
    same = ec.combine_all([m1, ec.MassFunction.vacuous(f)])
    assert same.focal() == m1.focal()

    certain_rock = ec.MassFunction.from_labels(f, [(["rock"], 1.0)])
    certain_paper = ec.MassFunction.from_labels(f, [(["paper"], 1.0)])
    with pytest.raises(ec.TotalConflictError):
        ec.combine_pair(certain_rock, certain_paper)
    assert issubclass(ec.TotalConflictError, ec.Error)


def test_dichotomous_chain():
    f = frame3()
    chain = [
        ec.DichotomousMass(f, 0, 0.5, 0.3, 0.2),
        ec.DichotomousMass(f, 0, 0.4, 0.4, 0.2),
    ]
    assert ec.normalization_repeated(chain) == pytest.approx(0.68)
    combined = ec.combine_repeated(chain)
    assert combined.focus == 0
    assert combined.p == pytest.approx(0.38 / 0.68)
    assert combined.c == pytest.approx(0.26 / 0.68)
    assert combined.r == pytest.approx(0.04 / 0.68)
    assert combined.d == pytest.approx(1.0 - 0.38 / 0.68)

    general = ec.to_general(combined)
    assert ec.belief(general, ["rock"]) == pytest.approx(0.38 / 0.68)
    assert "focus='rock'" in repr(combined)


def test_triplet_pair_cases():
    f = frame3()
    t = ec.TripletMass(f, 0, 1, 0.6, 0.3, 0.1)
    equal = ec.combine_equal(t, t)
    assert equal.m1 == pytest.approx(0.75)
    assert equal.m2 == pytest.approx(0.234375)
    assert equal.mt == pytest.approx(0.015625)
    auto = ec.combine_pair_auto(t, t)
    assert auto.m1 == pytest.approx(equal.m1)

    shared = ec.combine_one_shared(
        ec.TripletMass(f, 0, 1, 0.5, 0.3, 0.2),
        ec.TripletMass(f, 0, 2, 0.4, 0.4, 0.2),
    )
    assert shared.intermediate.theta == pytest.approx(2.0 / 28.0)
    assert shared.refocused.a1 == 0
    assert shared.refocused.m1 == pytest.approx(19.0 / 28.0)
    assert shared.refocused.mt == pytest.approx(5.0 / 28.0)

    f4 = ec.Frame(["a", "b", "c", "d"])
    disjoint = ec.combine_disjoint(
        ec.TripletMass(f4, 0, 1, 0.5, 0.3, 0.2),
        ec.TripletMass(f4, 2, 3, 0.4, 0.3, 0.3),
    )
    assert disjoint.refocused.m1 == pytest.approx(0.340909, abs=1e-6)
    assert disjoint.refocused.m2 == pytest.approx(0.204545, abs=1e-6)
    assert disjoint.refocused.mt == pytest.approx(0.454545, abs=1e-6)


def test_fold_and_approx():
    f = frame3()
    chain = [
        ec.TripletMass(f, 0, 1, 0.6, 0.3, 0.1),
        ec.TripletMass(f, 0, 2, 0.6, 0.3, 0.1),
    ]
    folded = ec.fold_combine(chain)
    assert folded.m1 >= folded.m2
    assert folded.m1 + folded.m2 + folded.mt == pytest.approx(1.0)

    approx = ec.approx_combine(chain, lam=0.0)
    assert approx.m1 == pytest.approx(0.48 / 0.55)
    assert approx.m2 == pytest.approx(0.03 / 0.55)
    assert approx.mt == pytest.approx(0.04 / 0.55)

    sharp = [
        ec.TripletMass(f, 0, 1, 0.5, 0.5, 0.0),
        ec.TripletMass(f, 0, 2, 0.5, 0.5, 0.0),
    ]
    assert ec.approx_combine(sharp, lam=0.0).m1 == pytest.approx(1.0)
    with pytest.raises(ec.ApproxBreakdownError):
        ec.approx_combine(sharp, lam=0.1)


def test_outstanding_and_score_mappings():
    f = frame3()
    t = ec.outstanding(f, [0.5, 0.3, 0.2])
    assert (t.a1, t.a2) == (0, 1)
    assert (t.m1, t.m2, t.mt) == (0.5, 0.3, pytest.approx(0.2))

    t = ec.scores_to_triplet([2.0, 1.0, 1.0], f)
    assert t.m1 == pytest.approx(0.5)
    assert t.m2 == pytest.approx(0.25)
    assert t.a2 == 1  # ties break toward the lower index

    d = ec.scores_to_dichotomous([0.5, 0.3, 0.2], f, ignorance_floor=0.1)
    assert d.focus == 0
    assert d.p == pytest.approx(0.5)
    assert d.c == pytest.approx(0.45)
    assert d.r == pytest.approx(0.05)

    with pytest.raises(ec.MassError):
        ec.scores_to_triplet([0.0, 0.0, 0.0], f)


def test_fusion_pipeline():
    f = frame3()
    items = [
        ec.ScoreMatrix.Item("i0", [("c0", [5.0, 1.0, 1.0]), ("c1", [4.0, 2.0, 1.0])]),
        ec.ScoreMatrix.Item("i1", [("c0", [1.0, 6.0, 2.0]), ("c1", [1.0, 5.0, 3.0])]),
    ]
    matrix = ec.ScoreMatrix(f, items)
    assert len(matrix) == 2
    assert matrix.classifier_ids() == ["c0", "c1"]
    assert matrix.categories.same_as(matrix.categories)

    for method in (ec.FuseMethod.triplet, ec.FuseMethod.dichotomous, ec.FuseMethod.oracle):
        report = ec.fuse_matrix(matrix, ec.FuseOptions(method=method))
        assert [d.category for d in report.decisions] == [0, 1]
        assert report.undecided == 0
        assert report.accuracy is None
        assert report.combine_steps == 2

    labeled = ec.evaluate(
        matrix, {"i0": "rock", "i1": "scissors"}, ec.FuseOptions()
    )
    assert labeled.accuracy == pytest.approx(0.5)
    assert [acc for _, acc in labeled.individual_accuracy] == [0.5, 0.5]

    # A certainty clash cannot be combined; the item is marked, not raised.
    clash = ec.ScoreMatrix(
        f,
        [ec.ScoreMatrix.Item("x", [("c0", [1.0, 0.0, 0.0]), ("c1", [0.0, 1.0, 0.0])])],
    )
    report = ec.fuse_matrix(clash, ec.FuseOptions())
    assert report.undecided == 1
    assert report.decisions[0].undecided
    assert report.decisions[0].combined is None
    assert "conflict" in report.decisions[0].note

    decision = ec.fuse_item("solo", [("c0", [1.0, 3.0, 2.0])], f, ec.FuseOptions())
    assert decision.category == 1
    assert decision.combined.a1 == 1


def test_synthetic_workload():
    params = ec.SynthParams(categories=6, items=300, classifiers=5, seed=11)
    first = ec.synth_workload(params)
    again = ec.synth_workload(params)
    assert first.labels == again.labels
    assert first.matrix.items[0].scores == again.matrix.items[0].scores
    other = ec.synth_workload(
        ec.SynthParams(categories=6, items=300, classifiers=5, seed=12)
    )
    assert first.labels != other.labels

    report = ec.evaluate(first.matrix, first.labels, ec.FuseOptions())
    mean_individual = sum(a for _, a in report.individual_accuracy) / len(
        report.individual_accuracy
    )
    assert report.accuracy >= mean_individual
    assert report.wall_ns >= 0.0
