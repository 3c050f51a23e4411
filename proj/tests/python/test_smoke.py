# Copyright 2026 The corpus-forge Authors
# SPDX-License-Identifier: Apache-2.0

import pytest

import corpus_forge as cf


def test_scrub_pii():
    text, rep = cf.scrub_pii("Contacte ana@exemplo.pt ou 912 345 678 (servidor 8.8.8.8, rede 10.0.0.1).")
    assert text == "Contacte <EMAIL> ou <PHONE> (servidor <IP>, rede 10.0.0.1)."
    assert (rep["emails"], rep["phones"], rep["public_ips"]) == (1, 1, 1)
    assert [c for _, _, c in rep["replacements"]] == ["email", "phone", "ip"]
    again, rep2 = cf.scrub_pii(text)
    assert again == text and rep2["replacements"] == []
    assert cf.is_public_ip("8.8.8.8") and not cf.is_public_ip("192.168.1.1")


def test_minhash_and_lsh():
    a = " ".join(f"palavra{i}" for i in range(300))
    b = a + " mais uma frase no fim"
    sa, sb = cf.minhash(a), cf.minhash(b)
    assert len(sa) == 112
    assert cf.estimate_jaccard(sa, sb) > 0.9
    assert cf.candidate_pairs([a, "outra coisa totalmente distinta aqui e ali", b]) == [(0, 2)]
    assert cf.shingles("a b c", 2) == ["a b", "b c"]


def test_config(tmp_path):
    good = tmp_path / "good.toml"
    good.write_text('run_id = "r"\n')
    assert len(cf.config_hash(good)) == 64
    bad = tmp_path / "bad.toml"
    bad.write_text("[dedup]\nbands = 10\n")
    with pytest.raises(cf.ConfigError, match="bands x rows_per_band"):
        cf.config_hash(bad)


def test_scores():
    assert cf.variant_score("Vou à estação de comboios.") == 1.0
    assert cf.assign_split(0.8) == "high"
    assert cf.assign_split(0.5) == "medium"
    assert cf.assign_split(0.1) == "low"
    assert 0.0 <= cf.fallback_score("Um texto simples em português.") <= 1.0
