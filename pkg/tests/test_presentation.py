import pytest

from nilideal.presentation import (
    AUX,
    FAMILY_COUNTS,
    Presentation,
    Rule,
    RuleFileError,
    load_rules,
    parse_rule_line,
    save_rules,
    standard_presentation,
    validate,
)
from nilideal.words import A_LETTERS, ALPHABET, T_LETTERS, ZERO, w


def recount_families() -> dict:
    """Expansion sizes from the index ranges of each relation family."""
    ij = [(i, j) for i in range(1, 4) for j in range(1, 4)]
    off_diag = [(i, j) for i, j in ij if i != j]
    return {
        1: len(ALPHABET) * len(("L", "M")),
        2: 1,
        3: len(A_LETTERS),
        4: len([x for x in ALPHABET if x not in A_LETTERS]),
        5: len(ij),
        6: len(T_LETTERS) * len(("R", *A_LETTERS)),
        7: 3,
        8: len(off_diag),
        9: len(A_LETTERS) * 2,
        10: 1,
        11: 3,
        12: 1,
        13: 3,
        14: 3,
    }


def test_family_counts_match_recount():
    expected = recount_families()
    assert expected == FAMILY_COUNTS
    assert sum(expected.values()) == 90
    assert standard_presentation(False).family_counts() == expected
    with_aux = standard_presentation(True).family_counts()
    assert with_aux.pop(AUX) == 6
    assert with_aux == expected


def test_totals():
    assert len(standard_presentation(False)) == 90
    assert len(standard_presentation(True)) == 96


def test_relation_2_and_5():
    p = standard_presentation()
    two = [r for r in p.rules if r.paper_id == 2]
    assert two == [Rule(w("L"), w("M P g"), 2)]
    five = {(str(r.lhs), str(r.rhs)) for r in p.rules if r.paper_id == 5}
    assert len(five) == 9
    assert ("a1 g a2", "a1 R s1 Q a2") in five


def test_annihilation_lhs_catalogue():
    p = standard_presentation(True)
    for _, r in p.annihilation_rules:
        xs = r.lhs.letters
        if r.paper_id == 1:
            assert len(xs) == 2 and xs[1] in ("L", "M")
        elif r.paper_id == 4:
            assert xs[0] == "g" and xs[1] not in A_LETTERS
        elif r.paper_id == 12:
            assert xs == ("P", "R", "s1")
        elif r.paper_id == AUX:
            assert xs[0] in T_LETTERS and xs[1] in A_LETTERS and xs[2] == "Q"
            assert xs[0][1] != xs[1][1]
        else:
            pytest.fail(f"unexpected annihilation rule {r}")


def test_rule_invariants():
    for r in standard_presentation(True).rules:
        assert (r.kind == "annihilation") == r.rhs.zero
        assert not r.lhs.zero and r.lhs.letters
        assert r.rhs.zero or r.rhs.letters
        if not r.rhs.zero:
            assert "L" not in r.rhs.letters
    with pytest.raises(ValueError):
        Rule(ZERO, w("a1"))


def test_rule_lines():
    r = parse_rule_line("P R s1 -> 0 # rel 12")
    assert r.is_annihilation and r.paper_id == 12
    r = parse_rule_line("L -> M P g # rel 2")
    assert r.kind == "equality" and r.paper_id == 2
    r = parse_rule_line("t1 a2 Q -> 0  # aux")
    assert r.paper_id == AUX
    assert parse_rule_line("   # just a comment") is None
    assert parse_rule_line("") is None


@pytest.mark.parametrize("text", ["L M P g", "0 -> a1", "L -> x", "a1 -> a2 -> a3", "-> a1"])
def test_bad_rule_lines(text, tmp_path):
    path = tmp_path / "bad.rules"
    path.write_text("L -> M P g # rel 2\n" + text + "\n")
    with pytest.raises(RuleFileError, match="line 2"):
        load_rules(path)


def test_empty_file(tmp_path):
    path = tmp_path / "empty.rules"
    path.write_text("# nothing\n\n")
    with pytest.raises(RuleFileError):
        load_rules(path)


@pytest.mark.parametrize("aux", [False, True])
def test_save_load_round_trip(tmp_path, aux):
    p = standard_presentation(aux)
    path = tmp_path / "h.rules"
    save_rules(p, path)
    assert load_rules(path) == p


def test_validate_standard():
    report = validate(standard_presentation())
    assert report.ok, report.problems
    assert report.conserved_potential
    assert report.creators["L"] == ["rel 2 backward"]
    assert report.creators["g"] == ["rel 2 forward", "rel 5 backward"]
    assert "L created only by rel 2 backward" in report.notes
    assert "g created only by rel 2 forward and rel 5 backward" in report.notes
    weights = report.conserved_weights
    for _, r in standard_presentation().equality_rules:
        assert sum(weights[x] for x in r.lhs) == pytest.approx(sum(weights[x] for x in r.rhs))


def test_validate_flags_growth():
    p = Presentation((Rule(w("a1"), w("a1 a1")),))
    report = validate(p)
    assert not report.ok
    assert "unbounded growth: no conserved potential" in report.problems


def test_validate_flags_l_on_rhs():
    p = Presentation((Rule(w("M P g"), w("L"), 2),))
    assert any("rhs contains L" in x for x in validate(p).problems)


def test_without():
    p = standard_presentation().without(12)
    assert len(p) == 89
    assert all(r.paper_id != 12 for r in p.rules)
