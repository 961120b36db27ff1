"""Tests for graded Chow-class algebra, determinants, Pfaffians, and the
relation-matrix verification reports."""

import random
from fractions import Fraction

import pytest

from splitloci import chowsym as cs
from splitloci.chowsym import FilteredBundle, GradedElt
from splitloci.polynomial import Poly

C2 = Poly.var("c2")


def V(name):
    return Poly.var(name)


E1, E2, E3, E4 = V("e1"), V("e2"), V("e3"), V("e4")
F1, F2, F3, F4, F5 = V("f1"), V("f2"), V("f3"), V("f4"), V("f5")


class TestGradedElt:
    def test_z_squared_is_minus_c2(self):
        z = GradedElt.z_class()
        assert z * z == GradedElt(-C2, Poly())

    def test_ring_axioms_on_samples(self):
        l, m = GradedElt.gen("l"), GradedElt.gen("m")
        z = GradedElt.z_class()
        a = GradedElt.const(2) + l + z
        b = m - 3 * z if hasattr(GradedElt, "__rmul__") else m
        b = m + z * GradedElt.const(-3)
        c = l * m + GradedElt.const(1)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a
        assert (a - a) == GradedElt()

    def test_pow(self):
        z = GradedElt.z_class()
        assert z ** 4 == GradedElt(C2 * C2, Poly())

    def test_graded_parts_weights(self):
        # l has weight 1, c2 weight 2; the z coefficient adds one to the
        # weight of whatever multiplies it
        x = GradedElt.gen("l") + GradedElt(Poly.var("c2"), Poly.const(3))
        parts = x.graded_parts()
        assert parts[1] == GradedElt(Poly.var("l"), Poly.const(3))
        assert parts[2] == GradedElt(Poly.var("c2"), Poly())
        assert sorted(parts) == [1, 2]

    def test_ce_extract(self):
        c = GradedElt(Poly.var("l"), Poly.var("f1"))
        assert cs.ce_extract(c) == (Poly.var("l"), Poly.var("f1"))


class TestSplittingPrincipleDisplays:
    """The filtered-bundle Chern classes reproduce the printed display
    identities for each stratum shape, as exact polynomial identities."""

    def test_rank2_plus_rank1_shape(self):
        # e = (e1, e2, e2): rank-2 subbundle twisted by e2, rank-1 by e1
        bundle = FilteredBundle([FilteredBundle.rank2("r1", "r2", E2),
                                 FilteredBundle.rank1("l", E1)])
        c1, c2, c3 = cs.chern_total(bundle)
        r1, r2, l = V("r1"), V("r2"), V("l")
        assert cs.ce_extract(c1) == (r1 + l, 2 * E2 + E1)
        a, b = cs.ce_extract(c2)
        assert b == 2 * E2 * l + (E1 + E2) * r1
        assert a == l * r1 + r2 - (2 * E1 * E2 + E2 * E2) * C2

    def test_rank2_f_shape(self):
        # f = (f1, f2): two rank-1 pieces
        bundle = FilteredBundle([FilteredBundle.rank1("n", F2),
                                 FilteredBundle.rank1("m", F1)])
        c1, c2 = cs.chern_total(bundle)
        m, n = V("m"), V("n")
        assert cs.ce_extract(c1) == (m + n, F1 + F2)
        assert cs.ce_extract(c2) == (m * n - F1 * F2 * C2, F2 * m + F1 * n)

    def test_three_rank1_pieces_shape(self):
        # e = (e1, e2, e3) all distinct: three rank-1 pieces
        bundle = FilteredBundle([FilteredBundle.rank1("l", E1),
                                 FilteredBundle.rank1("s", E2),
                                 FilteredBundle.rank1("t", E3)])
        c1, c2, c3 = cs.chern_total(bundle)
        l, s, t = V("l"), V("s"), V("t")
        assert cs.ce_extract(c1) == (l + s + t, E1 + E2 + E3)
        a, b = cs.ce_extract(c2)
        assert b == (E2 + E3) * l + (E1 + E3) * s + (E1 + E2) * t
        assert a == (l * (s + t) + s * t
                     - (E1 * E2 + E1 * E3 + E2 * E3) * C2)

    def test_pentagonal_first_shape(self):
        # e = (e1, e2, e2, e4): rank-1 L at e4, rank-2 R at e2, rank-1 T at e1
        ve = FilteredBundle([FilteredBundle.rank1("l", E4),
                             FilteredBundle.rank2("r1", "r2", E2),
                             FilteredBundle.rank1("t", E1)])
        c1e, c2e, _, _ = cs.chern_total(ve)
        l, r1, r2, t = V("l"), V("r1"), V("r2"), V("t")
        assert cs.ce_extract(c1e)[0] == l + r1 + t
        a2, a2p = cs.ce_extract(c2e)
        assert a2p == (E1 + 2 * E2) * l + (E1 + E2 + E4) * r1 \
            + (2 * E2 + E4) * t
        assert a2 == (r2 + r1 * (l + t) + l * t
                      - (2 * E1 * E2 + E2 * E2 + E1 * E4
                         + 2 * E2 * E4) * C2)

        # f = (f1, f1, f3, f3, f5): rank-1 S at f5, rank-2 M at f3,
        # rank-2 N at f1
        vf = FilteredBundle([FilteredBundle.rank1("s", F5),
                             FilteredBundle.rank2("m1", "m2", F3),
                             FilteredBundle.rank2("n1", "n2", F1)])
        c1f, c2f, c3f, _, _ = cs.chern_total(vf)
        s, m1, m2, n1, n2 = V("s"), V("m1"), V("m2"), V("n1"), V("n2")
        b1, b1p = cs.ce_extract(c1f)
        assert b1 == s + m1 + n1
        assert b1p == F5 + 2 * F3 + 2 * F1
        b2, b2p = cs.ce_extract(c2f)
        assert b2p == (2 * F3 + 2 * F1) * s + (F5 + F3 + 2 * F1) * m1 \
            + (F5 + 2 * F3 + F1) * n1
        assert b2 == (s * (m1 + n1) + m1 * n1 + m2 + n2
                      - (2 * F5 * F3 + F3 * F3 + 2 * F5 * F1
                         + 4 * F3 * F1 + F1 * F1) * C2)
        _, b3p = cs.ce_extract(c3f)
        assert b3p == ((F3 + 2 * F1) * s * m1 + (2 * F3 + F1) * s * n1
                       + (F5 + F3 + F1) * m1 * n1
                       + (F5 + 2 * F1) * m2 + (F5 + 2 * F3) * n2
                       - (F5 * F3 * F3 + 4 * F5 * F3 * F1
                          + 2 * F3 * F3 * F1 + F5 * F1 * F1
                          + 2 * F3 * F1 * F1) * C2)

    def test_pentagonal_second_shape(self):
        # e = (e1, e2, e3, e3): rank-2 R at e3, rank-1 S at e2, rank-1 L at e1
        ve = FilteredBundle([FilteredBundle.rank2("r1", "r2", E3),
                             FilteredBundle.rank1("s", E2),
                             FilteredBundle.rank1("l", E1)])
        _, c2e, _, _ = cs.chern_total(ve)
        l, r1, r2, s = V("l"), V("r1"), V("r2"), V("s")
        a2, a2p = cs.ce_extract(c2e)
        assert a2p == (E2 + 2 * E3) * l + (E1 + E2 + E3) * r1 \
            + (E1 + 2 * E3) * s
        assert a2 == (l * r1 + l * s + r1 * s + r2
                      - (E1 * E2 + 2 * E1 * E3 + 2 * E2 * E3
                         + E3 * E3) * C2)

        # f = (f1, f2, f2, f4, f4): rank-2 M at f4, rank-2 N at f2,
        # rank-1 T at f1
        vf = FilteredBundle([FilteredBundle.rank2("m1", "m2", F4),
                             FilteredBundle.rank2("n1", "n2", F2),
                             FilteredBundle.rank1("t", F1)])
        _, c2f, c3f, _, _ = cs.chern_total(vf)
        t, m1, m2, n1, n2 = V("t"), V("m1"), V("m2"), V("n1"), V("n2")
        b2, b2p = cs.ce_extract(c2f)
        assert b2p == (2 * F4 + 2 * F2) * t + (F4 + 2 * F2 + F1) * m1 \
            + (2 * F4 + F2 + F1) * n1
        assert b2 == (t * m1 + t * n1 + m1 * n1 + m2 + n2
                      - (F4 * F4 + 4 * F4 * F2 + F2 * F2
                         + 2 * F4 * F1 + 2 * F2 * F1) * C2)
        _, b3p = cs.ce_extract(c3f)
        assert b3p == ((F4 + 2 * F2) * t * m1 + (2 * F4 + F2) * t * n1
                       + (F4 + F2 + F1) * m1 * n1
                       + (2 * F2 + F1) * m2 + (2 * F4 + F1) * n2
                       - (2 * F4 * F4 * F2 + 2 * F4 * F2 * F2
                          + F4 * F4 * F1 + 4 * F4 * F2 * F1
                          + F2 * F2 * F1) * C2)


def random_poly_matrix(rng, n, nvars=2, max_terms=2):
    names = ["x%d" % i for i in range(nvars)]
    def rand_poly():
        p = Poly()
        for _ in range(rng.randint(0, max_terms)):
            term = Poly.const(rng.randint(-4, 4))
            for name in names:
                term = term * Poly.var(name, rng.randint(0, 2))
            p = p + term
        return p
    return [[rand_poly() for _ in range(n)] for _ in range(n)]


class TestDeterminants:
    def test_engines_agree_on_random_matrices(self):
        rng = random.Random(7)
        for n in (1, 2, 3, 4, 5):
            for _ in range(5):
                m = random_poly_matrix(rng, n)
                assert cs.det_bareiss(m) == cs.det_cofactor(m)

    def test_singular_matrix(self):
        row = [Poly.var("a"), Poly.var("b")]
        assert cs.det_bareiss([row, row]).is_zero()

    def test_integer_spot_value(self):
        m = [[Poly.const(c) for c in row]
             for row in [[2, 1, 0], [1, 3, 1], [0, 1, 2]]]
        assert cs.det(m) == Poly.const(8)

    def test_non_square_raises(self):
        with pytest.raises(ValueError):
            cs.det_bareiss([[Poly.const(1), Poly.const(2)]])

    def test_det_on_all_registered_matrices(self):
        for spec in cs.LEMMAS.values():
            for rows in filter(None, (spec.rows, spec.reconstructed_rows)):
                assert cs.det_bareiss(rows) == cs.det_cofactor(rows)


class TestPfaffians:
    def test_printed_quadric_forms(self):
        mat = cs.generic_skew5()
        L = {(i, j): Poly.var("L%d%d" % (i, j))
             for i in range(1, 6) for j in range(i + 1, 6)}
        q1, q2, q3, q4, q5 = cs.pfaffians(mat)
        assert q1 == L[2, 5] * L[3, 4] - L[2, 4] * L[3, 5] + L[2, 3] * L[4, 5]
        assert q2 == L[1, 5] * L[3, 4] - L[1, 4] * L[3, 5] + L[1, 3] * L[4, 5]
        assert q3 == L[1, 5] * L[2, 4] - L[1, 4] * L[2, 5] + L[1, 2] * L[4, 5]
        assert q4 == L[1, 5] * L[2, 3] - L[1, 3] * L[2, 5] + L[1, 2] * L[3, 5]
        assert q5 == L[1, 4] * L[2, 3] - L[1, 3] * L[2, 4] + L[1, 2] * L[3, 4]

    def test_quadrics_equal_sub_pfaffians(self):
        mat = cs.generic_skew5()
        qs = cs.pfaffians(mat)
        for i in range(5):
            minor = cs.principal_minor(mat, i)
            assert qs[i] == cs.pfaffian4(minor)

    def test_pfaffian_squared_is_determinant(self):
        mat = cs.generic_skew5()
        for i in range(5):
            minor = cs.principal_minor(mat, i)
            pf = cs.pfaffian4(minor)
            assert pf * pf == cs.det(minor)

    def test_skew_checks(self):
        with pytest.raises(ValueError):
            cs.pfaffian4([[Poly.const(1)] * 4 for _ in range(4)])
        with pytest.raises(ValueError):
            cs.pfaffians(cs.generic_skew5()[:4])


class TestRankFormulas:
    def test_ce_rank_values(self):
        assert cs.ce_rank(4, 1) == 2
        assert cs.ce_rank(5, 1) == 5
        assert cs.ce_rank(5, 2) == 5

    def test_ce_rank_out_of_range(self):
        with pytest.raises(ValueError):
            cs.ce_rank(4, 3)
        with pytest.raises(ValueError):
            cs.ce_rank(2, 1)

    def test_quadric_count(self):
        assert cs.quadric_count(9) == 21
        assert cs.quadric_count(7) == 10
        with pytest.raises(ValueError):
            cs.quadric_count(3)

    def test_sym2_chern_identity(self):
        result = cs.sym2_chern_check()
        assert result["ok"]
        assert result["odd_classes_vanish"]
        assert result["degree1_coefficients"] == [8]
        assert result["degree2_coefficients"] == [22, 14]
        assert result["degree3_coefficients"] == [28, 54, 38]

    def test_c2_kappa2_constant(self):
        p = cs.c2_kappa2_constant()
        assert p.evaluate({"g": 0}) == 288
        assert p.evaluate({"g": 9}) == -24 * (2 * 729 - 32 * 81 + 138 * 9 - 12)


class TestLemmaReports:
    def test_registry_contents(self):
        assert set(cs.LEMMAS) == {
            "twoequalparts", "distinctparts-1", "distinctparts-2",
            "distinctparts-3i", "distinctparts-3ii",
            "shape1", "forsigma2", "forsigma3"}
        with pytest.raises(KeyError):
            cs.build_relation_matrix("nope")

    def test_twoequalparts_invertible_everywhere(self):
        report = cs.verify_lemma("twoequalparts")
        assert report.verdict == "nonvanishing-only"
        assert report.det_claimed is None
        assert report.evaluations
        assert all(ev["nonvanishing"] for ev in report.evaluations)
        # determinant factors as (e2 - e1)(f1 - f2)
        spec = cs.LEMMAS["twoequalparts"]
        assert cs.det(spec.rows) == (E2 - E1) * (F1 - F2)

    @pytest.mark.parametrize("lemma_id", [
        "distinctparts-1", "distinctparts-3i", "distinctparts-3ii",
        "shape1", "forsigma2", "forsigma3"])
    def test_closed_forms_match(self, lemma_id):
        report = cs.verify_lemma(lemma_id)
        assert report.verdict == "match"
        assert not report.is_failure

    @pytest.mark.parametrize("lemma_id", ["shape1", "forsigma2", "forsigma3"])
    def test_pentagonal_identities_need_no_substitution(self, lemma_id):
        assert cs.LEMMAS[lemma_id].substitutions == ()

    def test_distinctparts2_structured_discrepancy(self):
        report = cs.verify_lemma("distinctparts-2")
        assert report.verdict.startswith("mismatch")
        assert report.annotations  # documented, hence not a failure
        assert not report.is_failure
        assert all(ev["nonvanishing"] for ev in report.evaluations)
        # the printed matrix, the relation-derived matrix, and the claimed
        # closed form give three pairwise different polynomials
        spec = cs.LEMMAS["distinctparts-2"]
        subs = spec.substitutions  # applied in order
        printed = cs.det(
            [[e.rewrite(subs) for e in row] for row in spec.rows])
        recon = cs.det([[e.rewrite(subs) for e in row]
                        for row in spec.reconstructed_rows])
        claimed = spec.claimed.rewrite(subs)
        assert printed == 96 * (E2 - E1) * (E1 + E2 + 4)
        assert recon == 96 * (E2 - E1) * (E1 + E2 - 2)
        assert claimed == 96 * (E2 - E1) * (E1 + E2 + 1)
        assert report.reconstructed is not None
        assert report.reconstructed["matches_claimed"] is False

    def test_distinctparts2_spot_evaluation(self):
        report = cs.verify_lemma("distinctparts-2")
        spot = next(ev for ev in report.evaluations
                    if ev["stratum"]["genus"] == 9
                    and ev["stratum"]["e"] == [2, 4, 6])
        assert spot["value_claimed"] == "1344"  # 48 * 14 * 2
        assert spot["value_computed"] == "1920"
        assert spot["nonvanishing"]

    def test_row_differences_are_multiples_of_first_relation(self):
        report = cs.verify_lemma("distinctparts-2")
        diffs = report.reconstructed["row_differences"]
        assert diffs[3] == ["48", "48", "48", "0", "0"]
        assert diffs[4] == ["72", "72", "72", "0", "0"]

    def test_engineered_zero_certified_singular(self):
        report = cs.verify_lemma("distinctparts-3ii")
        zero = [ev for ev in report.evaluations if ev.get("engineered_zero")]
        assert len(zero) == 1
        ev = zero[0]
        assert ev["stratum"] == {"genus": 6, "label": None,
                                 "e": [2, 3, 4], "f": [3, 6]}
        assert ev["singular_confirmed"]
        assert ev["null_vector"] is not None
        assert ev["value_claimed"] == "0"
        assert not report.is_failure

    def test_pentagonal_single_applicable_strata(self):
        for lemma_id, genus, value in [("shape1", 8, "-3"),
                                       ("forsigma2", 9, "-1"),
                                       ("forsigma3", 9, "-9")]:
            report = cs.verify_lemma(lemma_id)
            assert len(report.evaluations) == 1
            ev = report.evaluations[0]
            assert ev["stratum"]["genus"] == genus
            assert ev["value_computed"] == value == ev["value_claimed"]

    def test_is_failure_semantics(self):
        base = dict(lemma="x", matrix=[], substitutions=[],
                    det_computed="1", det_claimed="2",
                    verdict="mismatch(-1)", evaluations=[])
        assert cs.LemmaReport(**base).is_failure
        annotated = dict(base, annotations=["documented-discrepancy: ..."])
        assert not cs.LemmaReport(**annotated).is_failure
        vanishing = dict(base, verdict="match", evaluations=[
            {"nonvanishing": False}])
        assert cs.LemmaReport(**vanishing).is_failure
        engineered = dict(base, verdict="match", evaluations=[
            {"nonvanishing": False, "engineered_zero": True}])
        assert not cs.LemmaReport(**engineered).is_failure

    def test_verify_all(self):
        reports = cs.verify_all_lemmas()
        assert len(reports) == 8
        assert not any(r.is_failure for r in reports)
        for r in reports:
            data = r.to_dict()
            assert data["lemma"] == r.lemma
