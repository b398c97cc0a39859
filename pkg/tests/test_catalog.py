import pytest

from precsymp.catalog import CatalogError, list_entries, run_entry

ENTRIES = list_entries()


def test_entry_ids_present():
    for e in ("sp5.i", "sp5.iv", "ex2.8.0", "ex2.8.20", "rk2.12.a", "rk2.12.b", "rk1.8", "ex3.8.a", "s3s3s7"):
        assert e in ENTRIES


@pytest.mark.parametrize("entry", ENTRIES)
def test_entry_passes(entry):
    rep = run_entry(entry)
    bad = [r.text() for r in rep.results if not r.ok]
    assert rep.ok, bad
    assert rep.results


def write(tmp_path, name, text):
    (tmp_path / name).write_text(text)


def test_mismatch_is_reported_not_raised(tmp_path):
    write(tmp_path, "cp2.model", "gen x 2\ngen y 5\nd y = x^3\n")
    write(tmp_path, "toy.expect", "use cp2\nfd 4\nfd 6\nfinite Finite\nexact x^2 no\nexact x^3 yes\n")
    rep = run_entry("toy", tmp_path)
    assert [r.ok for r in rep.results] == [True, False, True, True, True]
    assert rep.results[1].text().startswith("[MISMATCH]")
    assert rep.results[1].citation.endswith(":3")
    machine = rep.lines(machine=True)
    assert machine[-1] == "entry=toy status=fail"


def test_check_errors_become_failures(tmp_path):
    write(tmp_path, "cp2.model", "gen x 2\ngen y 5\nd y = x^3\n")
    write(tmp_path, "toy.expect", "use cp2\nexact y no\n")
    rep = run_entry("toy", tmp_path)
    assert not rep.ok


def test_unknown_statement_and_entry(tmp_path):
    write(tmp_path, "toy.expect", "frobnicate 3\n")
    with pytest.raises(CatalogError):
        run_entry("toy", tmp_path)
    with pytest.raises(CatalogError):
        run_entry("missing", tmp_path)
