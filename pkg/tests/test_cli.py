import json

import pytest

from amrlink.cli import main


def run(argv):
    return main([str(a) for a in argv])


class TestGenDs:
    def test_writes_examples_and_summary(self, fixtures_dir, tmp_path, capsys):
        out = tmp_path / "ds.jsonl"
        code = run(["gen-ds", "--config", fixtures_dir / "config.toml",
                    "--corpus", fixtures_dir / "corpus.jsonl", "--out", out])
        assert code == 0
        lines = [json.loads(l) for l in out.read_text().splitlines()]
        assert lines and all({"text", "subj", "obj", "relation"} <= set(rec) for rec in lines)
        assert "examples" in capsys.readouterr().err

    def test_byte_identical_rerun(self, fixtures_dir, tmp_path):
        a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
        for out in (a, b):
            assert run(["gen-ds", "--config", fixtures_dir / "config.toml",
                        "--corpus", fixtures_dir / "corpus.jsonl", "--out", out]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_missing_corpus_exits_2(self, fixtures_dir, tmp_path):
        code = run(["gen-ds", "--config", fixtures_dir / "config.toml",
                    "--corpus", tmp_path / "nope.jsonl", "--out", tmp_path / "o.jsonl"])
        assert code == 2

    def test_below_threshold_relation_absent(self, fixtures_dir, tmp_path):
        out = tmp_path / "ds.jsonl"
        run(["gen-ds", "--config", fixtures_dir / "config.toml",
             "--corpus", fixtures_dir / "corpus.jsonl", "--out", out, "--min-examples", "3"])
        relations = {json.loads(l)["relation"] for l in out.read_text().splitlines()}
        assert "dbo:knownFor" not in relations  # only two corpus matches
        assert "dbo:birthPlace" in relations


class TestBuildAlignments:
    def test_builds_table(self, fixtures_dir, tmp_path):
        out = tmp_path / "table.json"
        code = run(["build-alignments", "--config", fixtures_dir / "config.toml",
                    "--ds", fixtures_dir / "ds_examples.jsonl",
                    "--amr", fixtures_dir / "ds_parses.penman", "--out", out])
        assert code == 0
        data = json.loads(out.read_text())
        by_relation = {row["relation"]: row["count"]
                       for row in data["predicates"]["bear-02.arg1.location"]}
        assert by_relation == {"dbo:birthPlace": 5}

    def test_idempotent(self, fixtures_dir, tmp_path):
        outs = []
        for name in ("a.json", "b.json"):
            out = tmp_path / name
            run(["build-alignments", "--config", fixtures_dir / "config.toml",
                 "--ds", fixtures_dir / "ds_examples.jsonl",
                 "--amr", fixtures_dir / "ds_parses.penman", "--out", out])
            outs.append(out.read_bytes())
        assert outs[0] == outs[1]

    def test_record_count_mismatch_exits_2(self, fixtures_dir, tmp_path):
        short = tmp_path / "short.penman"
        short.write_text("(m / movie)\n")
        code = run(["build-alignments", "--config", fixtures_dir / "config.toml",
                    "--ds", fixtures_dir / "ds_examples.jsonl", "--amr", short,
                    "--out", tmp_path / "t.json"])
        assert code == 2


class TestLinkAndEval:
    @pytest.fixture
    def linked(self, fixtures_dir, tmp_path, fixture_resources):
        out = tmp_path / "linked.jsonl"
        code = run(["link", "--config", fixtures_dir / "config.toml",
                    "--questions", fixtures_dir / "questions.jsonl", "--out", out])
        assert code == 0
        return out

    def test_link_output_shape(self, linked):
        rows = [json.loads(l) for l in linked.read_text().splitlines()]
        assert len(rows) == 10
        q1 = next(r for r in rows if r["id"] == "q1")
        assert q1["predictions"] == ["dbo:country", "dbo:producer", "dbo:starring"]
        assert all("ranked" in t and "scores" in t for t in q1["triples"])

    def test_link_idempotent(self, fixtures_dir, tmp_path, fixture_resources):
        outs = []
        for name in ("a.jsonl", "b.jsonl"):
            out = tmp_path / name
            run(["link", "--config", fixtures_dir / "config.toml",
                 "--questions", fixtures_dir / "questions.jsonl", "--out", out])
            outs.append(out.read_bytes())
        assert outs[0] == outs[1]

    def test_eval_perfect_on_fixture_gold(self, linked, fixtures_dir, tmp_path, capsys):
        report_path = tmp_path / "report.json"
        code = run(["eval", "--pred", linked, "--gold", fixtures_dir / "gold.jsonl",
                    "--out", report_path])
        assert code == 0
        report = json.loads(report_path.read_text())
        assert report["f1"] == 1.0
        assert "f1" in capsys.readouterr().out

    def test_eval_qid_mismatch_exits_2(self, linked, tmp_path):
        bad_gold = tmp_path / "gold.jsonl"
        bad_gold.write_text('{"id": "zz", "gold_relations": ["r"]}\n')
        assert run(["eval", "--pred", linked, "--gold", bad_gold]) == 2

    def test_empty_question_file(self, fixtures_dir, tmp_path):
        empty = tmp_path / "empty.jsonl"
        empty.write_text("")
        out = tmp_path / "out.jsonl"
        assert run(["link", "--config", fixtures_dir / "config.toml",
                    "--questions", empty, "--out", out]) == 0
        assert out.read_text() == ""

    def test_unreachable_neural_endpoint_degrades(self, fixtures_dir, tmp_path, monkeypatch):
        # config with a dead endpoint instead of the stub: output still produced
        config = tmp_path / "config.toml"
        text = (fixtures_dir / "config.toml").read_text().replace(
            'stub = "neural_stub.json"', 'endpoint = "127.0.0.1:9"'
        )
        config.write_text(text.replace('kb = "', f'kb = "{fixtures_dir}/').replace(
            f'kb = "{fixtures_dir}/kb.tsv"', f'kb = "{fixtures_dir}/kb.tsv"'
        ))
        # rewrite all relative paths against the fixture dir
        lines = []
        for line in text.splitlines():
            if line.startswith(("kb", "labels", "hierarchy", "embeddings", "type_mapping",
                                "frame_aliases", "alignment_table")):
                key, _, value = line.partition(" = ")
                lines.append(f'{key} = "{fixtures_dir}/{json.loads(value)}"')
            else:
                lines.append(line)
        config.write_text("\n".join(lines) + "\n")
        out = tmp_path / "out.jsonl"
        import amrlink.scorers as scorers_mod
        monkeypatch.setattr(scorers_mod.NeuralClient, "__init__",
                            lambda self, endpoint, timeout=0.05: (
                                setattr(self, "host", "127.0.0.1"),
                                setattr(self, "port", 9),
                                setattr(self, "timeout", 0.05),
                            ) and None)
        code = run(["link", "--config", config,
                    "--questions", fixtures_dir / "questions.jsonl", "--out", out])
        assert code == 0
        rows = [json.loads(l) for l in out.read_text().splitlines()]
        assert len(rows) == 10
        assert all("error" not in r for r in rows)


class TestAblate:
    def test_table_and_alignment_drop(self, fixtures_dir, tmp_path, fixture_resources, capsys):
        out = tmp_path / "ablation.json"
        code = run(["ablate", "--config", fixtures_dir / "config.toml",
                    "--questions", fixtures_dir / "questions.jsonl",
                    "--gold", fixtures_dir / "gold.jsonl", "--out", out])
        assert code == 0
        rows = json.loads(out.read_text())
        assert rows["full"]["f1"] == 1.0
        assert rows["w/o align"]["f1"] < 1.0
        printed = capsys.readouterr().out
        assert "full" in printed and "w/o align" in printed

    def test_full_row_matches_link_plus_eval(self, fixtures_dir, tmp_path, fixture_resources):
        out = tmp_path / "ablation.json"
        run(["ablate", "--config", fixtures_dir / "config.toml",
             "--questions", fixtures_dir / "questions.jsonl",
             "--gold", fixtures_dir / "gold.jsonl", "--out", out])
        linked = tmp_path / "linked.jsonl"
        run(["link", "--config", fixtures_dir / "config.toml",
             "--questions", fixtures_dir / "questions.jsonl", "--out", linked])
        report_path = tmp_path / "report.json"
        run(["eval", "--pred", linked, "--gold", fixtures_dir / "gold.jsonl", "--out", report_path])
        ablation_full = json.loads(out.read_text())["full"]
        direct = json.loads(report_path.read_text())
        assert ablation_full["f1"] == direct["f1"]
        assert ablation_full["precision"] == direct["precision"]


class TestConvertNt:
    def test_round_trip(self, tmp_path):
        nt = tmp_path / "data.nt"
        nt.write_text(
            "<http://dbpedia.org/resource/Skype> <http://dbpedia.org/ontology/developer> "
            "<http://dbpedia.org/resource/Microsoft> .\n"
        )
        out = tmp_path / "kb.tsv"
        code = run(["convert-nt", "--nt", nt, "--out", out,
                    "--prefix", "dbr=http://dbpedia.org/resource/",
                    "--prefix", "dbo=http://dbpedia.org/ontology/"])
        assert code == 0
        assert "dbr:Skype\tdbo:developer\tdbr:Microsoft" in out.read_text()

    def test_bad_prefix_flag_exits_2(self, tmp_path):
        nt = tmp_path / "data.nt"
        nt.write_text("")
        assert run(["convert-nt", "--nt", nt, "--out", tmp_path / "o.tsv", "--prefix", "nonsense"]) == 2
