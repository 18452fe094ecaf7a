import pytest

import qdwork


def test_catalog_sizes():
    rows = qdwork.catalog()
    assert sum(r["kind"] == "q" for r in rows) == 32
    assert sum(r["kind"] == "p" for r in rows) == 14
    assert {"Q-MAIN1", "C-65", "P-T12"} <= {r["id"] for r in rows}


def test_verify_q_main_theorem():
    rep = qdwork.verify_q("Q-MAIN1", n=5, r=2, d=1)
    assert rep["pass"]
    assert [(f["N"], f["e"]) for f in rep["factors"]] == [(5, 1), (25, 2)]


def test_engines_give_same_valuation():
    a = qdwork.verify_q("Q-GPZ", n=3, engine="dense")
    b = qdwork.verify_q("Q-GPZ", n=3, engine="local")
    assert a["factors"][0]["achieved"] == b["factors"][0]["achieved"] == 2


def test_constraint_and_unknown_id():
    with pytest.raises(qdwork.ConstraintError):
        qdwork.verify_q("Q-MAIN1", n=7)
    with pytest.raises(qdwork.UnknownStatement):
        qdwork.verify_q("Q-NOPE", n=5)


def test_padic_side():
    assert qdwork.gamma_p(1, 5, 2) == 24
    assert qdwork.gamma_p("1/4", 5, 2) ** 4 % 25 == 6
    rep = qdwork.verify_super("P-T12", p=5, r=2)
    assert rep["pass"] and rep["factors"][0]["target_exponent"] == 4
    assert qdwork.dwork_check("H", 5, 2)["pass"]
    with pytest.raises(ValueError):
        qdwork.gamma_p("1/4", 2, 3)


def test_sweep_conjecture_only_never_gates():
    out = qdwork.sweep("statements = C-65\nn = 5, 9\nm = 1..2\n")
    assert out["exit_code"] == 0
    assert len(out["reports"]) == 4
