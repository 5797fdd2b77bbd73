"""Covector sets: axioms with witnesses, rank, uniformity, minors, tope
posets, and the covector file format.

Census numbers for the canonical instances (|L| = 13 for the segment,
51 for the triangle, 71 for the four-line) were pinned by the
brute-force scan over all 3^n sign patterns with pruning disabled
before being frozen here.
"""

import random

import pytest

from omtop.errors import (
    DimensionError,
    DomainError,
    InputFormatError,
    MembershipError,
)
from omtop.matroid import (
    AxiomReport,
    CovectorSet,
    atoms,
    contract,
    covector_rank,
    delete_minor,
    format_covector_file,
    is_uniform,
    parse_covector_file,
    tope_poset,
    topes,
    verify_covector_axioms,
)
from omtop.signvec import GroundSet, SignVector

S = SignVector.from_string


def cs(labels, strings, g=None) -> CovectorSet:
    return CovectorSet(GroundSet(labels, g=g), [S(x) for x in strings])


class TestCovectorSet:
    def test_set_semantics_and_iteration_order(self):
        L = cs(["a", "b"], ["00", "+0", "-0"])
        assert len(L) == 3
        assert S("+0") in L
        assert S("++") not in L
        assert [str(x) for x in L] == sorted(["00", "+0", "-0"])

    def test_duplicates_collapse(self):
        L = CovectorSet(GroundSet(["a"]), [S("+"), S("+"), S("0")])
        assert len(L) == 2

    def test_length_mismatch_rejected(self):
        with pytest.raises(DimensionError):
            cs(["a", "b"], ["+"])

    def test_loops(self):
        L = cs(["a", "b"], ["00", "+0", "-0"])
        assert L.loops() == frozenset({1})
        M = cs(["a"], ["0", "+", "-"])
        assert M.loops() == frozenset()


class TestAxioms:
    def test_rank_one_om_passes(self):
        rep = verify_covector_axioms(cs(["e"], ["0", "+", "-"]))
        assert rep.ok
        assert rep.l0_ok and rep.l1_ok and rep.l2_ok and rep.l3_ok
        assert bool(rep)

    def test_l0_failure(self):
        rep = verify_covector_axioms(cs(["e"], ["+", "-"]))
        assert not rep.l0_ok
        assert not rep.ok

    def test_l1_failure_with_witness(self):
        rep = verify_covector_axioms(cs(["e"], ["0", "+"]))
        assert rep.l0_ok
        assert not rep.l1_ok
        assert rep.l1_witnesses == (S("+"),)

    def test_l2_failure_with_witness(self):
        # one-point arrangements on two independent axes, compositions
        # (the open quadrants) left out
        rep = verify_covector_axioms(
            cs(["a", "b"], ["00", "0+", "0-", "+0", "-0"])
        )
        assert rep.l0_ok and rep.l1_ok
        assert not rep.l2_ok
        assert (S("0+"), S("+0")) in rep.l2_witnesses

    def test_l3_failure_with_witness(self):
        # four full quadrants without the separating axes: elimination
        # between ++ and +- has nowhere to land
        rep = verify_covector_axioms(
            cs(["a", "b"], ["00", "++", "--", "+-", "-+"])
        )
        assert rep.l0_ok and rep.l1_ok and rep.l2_ok
        assert not rep.l3_ok
        assert (S("++"), S("+-"), 1) in rep.l3_witnesses

    def test_two_parallel_elements_pass(self):
        # forms x and x on the line: a legitimate rank-1 set
        rep = verify_covector_axioms(cs(["a", "b"], ["00", "++", "--"]))
        assert rep.ok

    def test_report_json(self):
        rep = verify_covector_axioms(cs(["a", "b"], ["00", "0+"]))
        js = rep.to_json()
        assert js["ok"] is False
        assert js["l1_witnesses"] == ["0+"]

    def test_canonical_instances_pass(self, line_om, tri_om, four_om):
        for L in (line_om, tri_om, four_om):
            assert verify_covector_axioms(L).ok


class TestRank:
    def test_line_heights(self, line_om):
        assert line_om.rank() == 2
        assert covector_rank(line_om, S("000")) == 0
        assert covector_rank(line_om, S("0-+")) == 1
        assert covector_rank(line_om, S("+-+")) == 2
        assert covector_rank(line_om, S("++0")) == 1

    def test_membership_error(self, line_om):
        with pytest.raises(MembershipError):
            covector_rank(line_om, S("0-0"))

    def test_triangle_rank(self, tri_om, four_om):
        assert tri_om.rank() == 3
        assert four_om.rank() == 3


class TestUniformity:
    def test_rank_one(self):
        rep = is_uniform(cs(["e"], ["0", "+", "-"]))
        assert rep.uniform and rep.rank == 1

    def test_triangle_uniform(self, tri_om):
        rep = is_uniform(tri_om)
        assert rep.uniform
        assert rep.rank == 3
        assert rep.zero_set_witness is None and rep.rank_witness is None

    def test_four_line_not_uniform(self, four_om):
        rep = is_uniform(four_om)
        assert not rep.uniform
        assert not bool(rep)
        # the two parallel lines s, t and no third element: no covector
        # vanishes on exactly that pair
        assert rep.zero_set_witness == frozenset({2, 3})
        assert rep.rank_witness is not None
        x = rep.rank_witness
        r = four_om.rank()
        assert covector_rank(four_om, x) != r - len(x.zero_set())

    def test_witness_json_labels(self, four_om):
        js = is_uniform(four_om).to_json(four_om.ground)
        assert js["zero_set_witness"] == ["s", "t"]


class TestTopesAtoms:
    def test_line_topes_and_atoms(self, line_om):
        ts = topes(line_om)
        assert len(ts) == 6
        assert all(len(t.zero_set()) == 0 for t in ts)
        ats = atoms(line_om)
        assert len(ats) == 6
        assert S("0-+") in ats and S("++0") in ats
        # 13 = zero + atoms + topes for this rank-2 set
        assert 1 + len(ats) + len(ts) == len(line_om)

    def test_triangle_topes(self, tri_om):
        ts = topes(tri_om)
        # 7 affine regions, doubled by central symmetry
        assert len(ts) == 14
        assert sum(1 for t in ts if t.sign(3).char == "+") == 7


class TestMinors:
    def test_contract_g_of_line(self, line_om):
        M = contract(line_om, ["g"])
        assert M.ground.labels == ("h1", "h2")
        assert M.covectors == {S("00"), S("++"), S("--")}
        assert verify_covector_axioms(M).ok

    def test_delete_of_line(self, line_om):
        D = delete_minor(line_om, ["h2"])
        assert D.ground.labels == ("h1", "g")
        # forms x and t are independent: the full sign cube
        assert len(D) == 9
        assert verify_covector_axioms(D).ok

    def test_minors_commute_on_disjoint_labels(self, tri_om):
        a = contract(delete_minor(tri_om, ["x"]), ["y"])
        b = delete_minor(contract(tri_om, ["y"]), ["x"])
        assert a == b

    def test_minor_axioms_hold(self, tri_om, four_om):
        for L in (tri_om, four_om):
            for lab in L.ground.labels:
                assert verify_covector_axioms(contract(L, [lab])).ok
                assert verify_covector_axioms(delete_minor(L, [lab])).ok

    def test_unknown_label(self, line_om):
        with pytest.raises(DomainError):
            contract(line_om, ["nope"])


class TestTopePoset:
    def test_base_is_unique_minimum(self, line_om):
        B = S("--+")
        P = tope_poset(line_om, B)
        assert all(P.less_equal(B, t) for t in P.topes)
        assert sum(1 for t in P.topes if P.less_equal(t, B)) == 1

    def test_negative_base_is_maximum(self, line_om):
        B = S("--+")
        P = tope_poset(line_om, B)
        assert all(P.less_equal(t, -B) for t in P.topes)

    def test_non_tope_rejected(self, line_om):
        with pytest.raises(MembershipError):
            tope_poset(line_om, S("0-+"))

    def test_linear_extension_is_deterministic_order_ideal_prefix(
        self, tri_om
    ):
        B = min(topes(tri_om), key=str)
        P = tope_poset(tri_om, B)
        ext = P.linear_extension()
        assert ext == P.linear_extension()
        assert sorted(map(str, ext)) == sorted(map(str, P.topes))
        assert ext[0] == B
        for k in range(1, len(ext) + 1):
            assert P.order_ideal(ext[:k])

    def test_random_extension_respects_order(self, tri_om):
        B = min(topes(tri_om), key=str)
        P = tope_poset(tri_om, B)
        rng = random.Random(5)
        ext = P.random_linear_extension(rng)
        pos = {t: i for i, t in enumerate(ext)}
        for a in P.topes:
            for b in P.topes:
                if P.less_equal(a, b):
                    assert pos[a] <= pos[b]

    def test_interval_invariance(self, line_om, tri_om):
        # the interval [T, T'] carries the same order whether topes are
        # measured from B or from T itself
        for L in (line_om, tri_om):
            ts = sorted(topes(L), key=str)
            B = ts[0]
            PB = tope_poset(L, B)
            for T in ts:
                PT = tope_poset(L, T)
                for T2 in ts:
                    if not PB.less_equal(T, T2):
                        continue
                    ival_B = [
                        t
                        for t in ts
                        if PB.less_equal(T, t) and PB.less_equal(t, T2)
                    ]
                    ival_T = [
                        t
                        for t in ts
                        if PT.less_equal(T, t) and PT.less_equal(t, T2)
                    ]
                    assert ival_B == ival_T
                    for a in ival_B:
                        for b in ival_B:
                            assert PB.less_equal(a, b) == PT.less_equal(a, b)


class TestCovectorFile:
    GOOD = "\n".join(
        [
            "# a one-point arrangement",
            "e g",
            "g g",
            "00",
            "+0  # unused trailing comment",
            "-0",
            "0+",
            "++",
            "-+",
            "0-",
            "+-",
            "--",
        ]
    )

    def test_round_trip(self):
        L = parse_covector_file(self.GOOD, source="good.cov")
        assert len(L) == 9
        assert L.ground.labels == ("e", "g")
        assert L.ground.g == "g"
        text = format_covector_file(L)
        again = parse_covector_file(text)
        assert again == L

    def test_no_g_line(self):
        L = parse_covector_file("a b\n00\n+-\n")
        assert L.ground.g is None
        assert len(L) == 2

    def test_duplicate_line_rejected(self):
        with pytest.raises(InputFormatError) as ei:
            parse_covector_file("a\n+\n+\n", source="f.cov")
        assert "duplicate" in str(ei.value)
        assert "f.cov" in str(ei.value)

    def test_bad_sign_string(self):
        with pytest.raises(InputFormatError):
            parse_covector_file("a b\n+x\n")

    def test_wrong_length(self):
        with pytest.raises(InputFormatError):
            parse_covector_file("a b\n+\n")

    def test_unknown_g(self):
        with pytest.raises(InputFormatError):
            parse_covector_file("a b\ng c\n00\n")

    def test_g_line_must_be_second(self):
        with pytest.raises(InputFormatError):
            parse_covector_file("a b\n00\ng a\n")

    def test_duplicate_labels(self):
        with pytest.raises(InputFormatError):
            parse_covector_file("a a\n00\n")

    def test_empty_file(self):
        with pytest.raises(InputFormatError):
            parse_covector_file("# nothing\n")
