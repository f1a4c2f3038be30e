from __future__ import annotations

import logging

import pytest

from cli.commands import parse_word
from cli.document import load_document, parse_document, render_document
from conftest import FIXTURES, fixture_path, load
from core.errors import ParseError, UndeclaredSymbol, UnknownKind, UsageError
from core.main import main


def path(name: str) -> str:
    return str(fixture_path(name))


NONDETERMINISTIC = """\
kind: wk
alphabet: a
rho: a:a
states: q0 qf
start: q0
final: qf
trans: q0 a / - -> qf
trans: q0 a / a -> qf
"""


# Parsing ----------------------------------------------------------------------------------------


def test_empty_file_is_missing_its_header():
    with pytest.raises(ParseError) as info:
        parse_document("")
    assert (info.value.line, info.value.column) == (1, 1)


def test_undeclared_state_is_pinned():
    with pytest.raises(UndeclaredSymbol) as info:
        parse_document("kind: wk\nalphabet: a\nstates: q0\nstart: qz\n")
    assert (info.value.line, info.value.column) == (4, 8)
    assert "qz" in info.value.message


def test_unknown_kind():
    with pytest.raises(UnknownKind) as info:
        parse_document("kind: nfa\n")
    assert (info.value.line, info.value.column) == (1, 7)


def test_malformed_transition():
    text = "kind: wk\nalphabet: a\nstates: q0\nstart: q0\ntrans: q0 a / a q0\n"
    with pytest.raises(ParseError) as info:
        parse_document(text)
    assert info.value.line == 5


def test_bad_rho_token():
    text = "kind: wk\nalphabet: a\nrho: a\nstates: q0\nstart: q0\n"
    with pytest.raises(ParseError) as info:
        parse_document(text)
    assert (info.value.line, info.value.column) == (3, 6)


def test_comments_start_only_at_a_token():
    text = "kind: wk\nalphabet: a  # one symbol\nstates: q0 q0#1\nstart: q0\n# whole-line comment\n"
    machine = parse_document(text).machine
    assert machine.alphabet == ("a",)
    assert machine.states == ("q0", "q0#1")


def test_nondeterministic_restricted_machine_is_a_parse_error():
    text = NONDETERMINISTIC.replace("kind: wk", "kind: restricted-wk") + "restriction: finite inline\n  word: a\n"
    with pytest.raises(ParseError):
        parse_document(text)


def test_partial_dfa_gets_a_sink_with_a_warning(caplog):
    with caplog.at_level(logging.WARNING):
        dfa = load("ab_star.dfa")
    assert dfa.is_complete
    assert "sink" in caplog.text


def test_restriction_file_must_have_the_named_class(tmp_path):
    (tmp_path / "lang.dfa").write_text((FIXTURES / "a_plus.dfa").read_text())
    machine = (FIXTURES / "example2.rwk").read_text().replace("cfg a2nbn.cfg", "cfg lang.dfa")
    (tmp_path / "m.rwk").write_text(machine)
    with pytest.raises(ParseError) as info:
        load_document(tmp_path / "m.rwk")
    assert "expected cfg" in info.value.message


def test_missing_file_is_a_parse_error(tmp_path):
    with pytest.raises(ParseError):
        load_document(tmp_path / "nowhere.rwk")


@pytest.mark.parametrize("name", sorted(p.name for p in FIXTURES.iterdir()))
def test_render_round_trip(name):
    machine = load(name)
    again = parse_document(render_document(machine)).machine
    assert again == machine


def test_word_tokens():
    assert parse_word(["-"], ("a", "b")) == ()
    assert parse_word(["aab"], ("a", "b")) == ("a", "a", "b")
    assert parse_word(["a", "b"], ("a", "b")) == ("a", "b")
    assert parse_word(["ab"], ("ab", "c")) == ("ab",)
    with pytest.raises(UsageError):
        parse_word(["abc"], ("a", "b"))


# Subcommands ------------------------------------------------------------------------------------


def test_run_accepts(capsys):
    assert main(["run", path("example1.rwk"), "--word", "aabb"]) == 0
    assert capsys.readouterr().out == "accept\n"


def test_run_rejects(capsys):
    assert main(["run", path("example1.rwk"), "--word", "a", "a", "b"]) == 1
    assert capsys.readouterr().out == "reject\n"


def test_run_notes_short_circuit(capsys):
    assert main(["run", path("example1.rwk"), "--word", "-"]) == 1
    captured = capsys.readouterr()
    assert captured.out == "reject\n"
    assert "rejected before running" in captured.err


def test_run_trace(capsys):
    assert main(["run", path("example1.rwk"), "--word", "aabb", "--trace"]) == 0
    err = capsys.readouterr().err
    assert "strand: aabb / aaaa" in err
    assert "(q0, 2, 0)  q0 (b / a a) -> qf" in err


def test_run_other_machine_kinds(capsys):
    assert main(["run", path("example1.pda"), "--word", "ab"]) == 0
    assert main(["run", path("ab_star.dfa"), "--word", "aba"]) == 1
    assert main(["run", path("palindromes.cfg"), "--word", "abba"]) == 0


def test_run_with_foreign_symbol(capsys):
    assert main(["run", path("example1.rwk"), "--word", "abc"]) == 2
    assert capsys.readouterr().err.startswith("error:")


def test_run_out_of_budget_is_inconclusive(tmp_path, capsys):
    text = (FIXTURES / "example2.rwk").read_text().replace("cfg a2nbn.cfg", f"csg {FIXTURES / 'anbncn.csg'}")
    (tmp_path / "csg.rwk").write_text(text)
    assert main(["run", str(tmp_path / "csg.rwk"), "--word", "abc", "--cs-budget", "2"]) == 2
    captured = capsys.readouterr()
    assert captured.out == "inconclusive abc\n"
    assert "sentential forms" in captured.err


def test_classify(capsys):
    assert main(["classify", path("example1.rwk")]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out == [
        "stateless: false",
        "all_final: false",
        "simple: false",
        "one_limited: false",
        "deterministic: true",
        "strongly_deterministic: false",
    ]


def test_classify_needs_a_wk_machine(capsys):
    assert main(["classify", path("ab_star.dfa")]) == 2


def test_convert_to_file(tmp_path, capsys):
    out = tmp_path / "one.rwk"
    assert main(["convert", path("example1.rwk"), "--to", "1lim", "-o", str(out)]) == 0
    assert "construction: 1-limited normal form" in capsys.readouterr().err
    assert len(load_document(out).machine.core.states) == 6


def test_convert_to_pda_matches_the_shipped_file(capsys):
    assert main(["convert", path("example1.rwk"), "--to", "pda"]) == 0
    pda = parse_document(capsys.readouterr().out).machine
    assert pda == load("example1.pda")


def test_convert_unsupported(capsys):
    assert main(["convert", path("example2.rwk"), "--to", "pda"]) == 2
    assert "unary" in capsys.readouterr().err


def test_enum(capsys):
    assert main(["enum", path("example1.rwk"), "--max-len", "6"]) == 0
    assert capsys.readouterr().out.split() == ["ab", "aabb", "aaabbb"]


def test_enum_concurrently(capsys):
    assert main(["enum", path("example1.rwk"), "--max-len", "6", "--jobs", "3"]) == 0
    assert capsys.readouterr().out.split() == ["ab", "aabb", "aaabbb"]


def test_equiv_equal(capsys):
    assert main(["equiv", path("example1.rwk"), path("example1.pda"), "--max-len", "8"]) == 0
    assert capsys.readouterr().out == "equal (checked 511 words)\n"


def test_equiv_counterexample(capsys):
    assert main(["equiv", path("example1.rwk"), path("ab_star.dfa"), "--max-len", "4"]) == 1
    assert capsys.readouterr().out == "counterexample -\n"


def test_equiv_alphabet_mismatch(capsys):
    assert main(["equiv", path("example1.rwk"), path("example2.rwk"), "--max-len", "2"]) == 2


def test_check_weak_det(capsys):
    assert main(["check-weak-det", path("example1.rwk"), "--max-len", "4"]) == 0
    assert capsys.readouterr().out == "weakly-deterministic (strands up to 4)\n"


def test_check_weak_det_witness(tmp_path, capsys):
    (tmp_path / "nd.wk").write_text(NONDETERMINISTIC)
    assert main(["check-weak-det", str(tmp_path / "nd.wk"), "--max-len", "2"]) == 1
    captured = capsys.readouterr()
    assert captured.out == "nondeterministic a / a at (q0, 0, 0)\n"
    assert "applicable: q0 (a / -) -> qf" in captured.err


def test_bad_arguments_exit_with_two(capsys):
    assert main(["run"]) == 2
    assert main(["enum", path("example1.rwk"), "--max-len", "-1"]) == 2
    assert main(["convert", path("example1.rwk"), "--to", "nfa"]) == 2


def test_help_exits_cleanly(capsys):
    assert main(["--help"]) == 0
