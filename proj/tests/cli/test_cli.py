# Copyright 2026 The corpus-forge Authors
# SPDX-License-Identifier: Apache-2.0

import json

PARA = ("O conselho municipal aprovou ontem o novo plano de mobilidade para a cidade, "
        "que prevê mais linhas de autocarro e ciclovias ao longo do rio. ")


def write_jsonl(path, rows):
    path.write_text("".join(json.dumps(r, ensure_ascii=False) + "\n" for r in rows), encoding="utf-8")


def read_jsonl(path):
    return [json.loads(l) for l in path.read_text(encoding="utf-8").splitlines() if l]


def warc_record(rtype, rid, uri, payload, ctype):
    body = payload.encode()
    head = (f"WARC/1.0\r\nWARC-Type: {rtype}\r\nWARC-Record-ID: <urn:uuid:{rid}>\r\n"
            f"WARC-Date: 2024-03-01T10:00:00Z\r\nWARC-Target-URI: {uri}\r\n"
            f"Content-Type: {ctype}\r\nContent-Length: {len(body)}\r\n\r\n")
    return head.encode() + body + b"\r\n\r\n"


def test_help_and_usage_errors(cli):
    assert cli("--help").returncode == 0
    assert cli().returncode == 2
    assert cli("no-such-command").returncode == 2
    assert cli("dedup").returncode == 2


def test_validate_config(cli, tmp_path):
    good = tmp_path / "good.toml"
    good.write_text('run_id = "r"\ninput = ["x/*.warc"]\n')
    p = cli("validate-config", good, check=0)
    assert p.stdout.startswith("ok ")
    assert len(p.stdout.split()[1]) == 64

    bad = tmp_path / "bad.toml"
    bad.write_text("[dedup]\nnum_hashes = 112\nbands = 10\nrows_per_band = 8\n")
    p = cli("validate-config", bad, check=2)
    assert "bands x rows_per_band" in p.stderr

    unknown = tmp_path / "unknown.toml"
    unknown.write_text("mystery = 1\n")
    p = cli("validate-config", unknown, check=2)
    assert "mystery" in p.stderr

    assert cli("validate-config", tmp_path / "missing.toml").returncode == 2


def test_stats_merges_reports(cli, tmp_path):
    a = {"stages": [{"stage": "url", "seen": 10, "kept": 7, "dropped_by_reason": {"url:br_domain": 3},
                     "tokens_in": 100, "tokens_out": 70}]}
    b = {"stages": [{"stage": "url", "seen": 5, "kept": 4, "dropped_by_reason": {"url:br_domain": 1},
                     "tokens_in": 50, "tokens_out": 40}]}
    (tmp_path / "a.json").write_text(json.dumps(a))
    (tmp_path / "b.json").write_text(json.dumps(b))
    p = cli("stats", "--json", tmp_path / "a.json", tmp_path / "b.json", check=0)
    url = json.loads(p.stdout)["stages"][0]
    assert (url["seen"], url["kept"], url["dropped_by_reason"]["url:br_domain"]) == (15, 11, 4)
    assert (url["tokens_in"], url["tokens_out"]) == (150, 110)

    p = cli("stats", tmp_path / "a.json", check=0)
    assert "url:br_domain" in p.stdout

    (tmp_path / "broken.json").write_text("{not json")
    assert cli("stats", tmp_path / "broken.json").returncode == 1


def test_dedup_dry_run_leaves_corpus(cli, tmp_path):
    text = PARA * 4
    rows = [{"id": "a", "text": text}, {"id": "b", "text": text + "Fim."},
            {"id": "c", "text": "Uma frase completamente diferente sobre o tempo e a chuva de outono. " * 4}]
    src = tmp_path / "docs.jsonl"
    write_jsonl(src, rows)
    out = tmp_path / "out.jsonl"
    clusters = tmp_path / "clusters.jsonl"
    p = cli("dedup", "-i", src, "--dry-run", "--clusters", clusters, "-o", out, check=0)
    assert "dry run" in p.stderr
    assert not out.exists()
    assert len(read_jsonl(clusters)) == 1

    cli("dedup", "-i", src, "-o", out, "--report", tmp_path / "r.json", check=0)
    assert [r["id"] for r in read_jsonl(out)] == ["a", "c"]
    st = json.loads((tmp_path / "r.json").read_text())["stages"][0]
    assert st["dropped_by_reason"] == {"dedup:near_duplicate": 1}

    assert cli("dedup", "-i", src).returncode == 2


def test_pii_redacts(cli, tmp_path):
    src = tmp_path / "d.jsonl"
    write_jsonl(src, [{"id": "p", "text": "Escreva para maria.silva@exemplo.pt ou ligue 912 345 678."}])
    cli("pii", "-i", src, "-o", tmp_path / "o.jsonl", check=0)
    text = read_jsonl(tmp_path / "o.jsonl")[0]["text"]
    assert "<EMAIL>" in text and "<PHONE>" in text
    assert "exemplo.pt" not in text


def test_bad_input_is_a_data_error(cli, tmp_path):
    src = tmp_path / "d.jsonl"
    src.write_text('{"id": "x", "text": "ok"}\n{"id": \n')
    assert cli("pii", "-i", src, "-o", tmp_path / "o.jsonl").returncode == 1


def test_ingest_and_run(cli, tmp_path):
    inp = tmp_path / "in"
    inp.mkdir()
    html = "<html><body>" + "".join(f"<p>{PARA}Parágrafo {i}.</p>" for i in range(6)) + "</body></html>"
    http = "HTTP/1.1 200 OK\r\nContent-Type: text/html; charset=utf-8\r\n\r\n" + html
    data = b"".join(warc_record("response", f"00000000-0000-0000-0000-00000000000{i}", f"https://site{i}.pt/a",
                                http, "application/http; msgtype=response") for i in range(3))
    (inp / "c.warc").write_bytes(data)

    cli("ingest", "-i", inp / "c.warc", "-o", tmp_path / "docs.jsonl", check=0)
    assert len(read_jsonl(tmp_path / "docs.jsonl")) == 3

    cfg = tmp_path / "p.toml"
    cfg.write_text(f'run_id = "cli"\ninput = ["{inp}/*.warc"]\noutput_dir = "{tmp_path / "out"}"\n'
                   '[split]\nfallback_scorer = true\n')
    p = cli("run", cfg, "-w", "2", check=0)
    report = json.loads((tmp_path / "out" / "run_report.json").read_text())
    assert report["stages"][0]["seen"] == 3
    assert "report:" in p.stderr

    assert cli("run", cfg, env={"CORPUS_FORGE_WORKERS": "zero"}).returncode == 2
    cli("run", cfg, "--no-resume", env={"CORPUS_FORGE_WORKERS": "3"}, check=0)
    assert json.loads((tmp_path / "out" / "run_report.json").read_text())["stages"] == report["stages"]


def test_mix(cli, tmp_path):
    for name, n in (("a", 40), ("b", 120)):
        rows = [{"id": f"{name}{i}", "messages": [{"role": "user", "content": f"pergunta {i} de {name}"},
                                                   {"role": "assistant", "content": PARA}]} for i in range(n)]
        write_jsonl(tmp_path / f"{name}.jsonl", rows)
    spec = tmp_path / "mix.toml"
    spec.write_text(f'token_budget = 2000\nseed = 3\nnormalize = true\n'
                    f'[[source]]\nname = "a"\npath = "{tmp_path / "a.jsonl"}"\nproportion = 1\n'
                    f'[[source]]\nname = "b"\npath = "{tmp_path / "b.jsonl"}"\nproportion = 3\n')
    cli("mix", "-s", spec, "-o", tmp_path / "m.jsonl", "--report", tmp_path / "m.json", check=0)
    rep = json.loads((tmp_path / "m.json").read_text())
    assert rep["tokens"] >= 2000
    assert len(read_jsonl(tmp_path / "m.jsonl")) == rep["entries"]
