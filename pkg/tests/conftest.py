from pathlib import Path

import pytest

from amrlink.pipeline import PipelineConfig, Resources

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def fixture_config() -> PipelineConfig:
    return PipelineConfig.from_file(FIXTURES / "config.toml")


@pytest.fixture(scope="session")
def fixture_resources(fixture_config, tmp_path_factory) -> Resources:
    # the alignment table is a build product, not a committed fixture
    from amrlink.alignment import build_table, load_aliases
    from amrlink.amr import parse_penman_file
    from amrlink.ds import read_examples
    from amrlink.kb import load_kb
    from amrlink.scorers import EmbeddingTable

    table_path = FIXTURES / "table.json"
    if not table_path.exists():
        kb = load_kb(FIXTURES / "kb.tsv", FIXTURES / "labels.tsv", FIXTURES / "hierarchy.tsv")
        emb = EmbeddingTable.load(FIXTURES / "embeddings.txt")
        examples = read_examples(FIXTURES / "ds_examples.jsonl")
        graphs = parse_penman_file((FIXTURES / "ds_parses.penman").read_text())
        table = build_table(
            zip(examples, graphs), kb, emb=emb, aliases=load_aliases(FIXTURES / "frame_aliases.tsv")
        )
        table.save(table_path)
    return Resources.load(fixture_config)
