"""Source acquisition: offline directories, containers, failure naming."""

import gzip
import io
import zipfile

import pytest

from cybok import data
from cybok.corpus.fetch import CorpusConfig, fetch_sources, maybe_decompress
from cybok.errors import FetchError


@pytest.fixture()
def source_dir(tmp_path):
    for name in data.SOURCE_FILES:
        (tmp_path / name).write_bytes(data.read_bytes(name))
    return tmp_path


def test_offline_config_finds_all_sources(source_dir):
    config = CorpusConfig.offline(source_dir)
    assert set(config.sources) == {"CAPEC", "CWE", "CVE"}


def test_offline_config_respects_database_subset(source_dir):
    config = CorpusConfig.offline(source_dir, databases=("CAPEC",))
    assert set(config.sources) == {"CAPEC"}


def test_offline_config_missing_source_names_database(tmp_path):
    (tmp_path / "capec.xml").write_bytes(data.read_bytes("capec.xml"))
    with pytest.raises(FetchError) as err:
        CorpusConfig.offline(tmp_path)
    assert "CWE" in str(err.value)


def test_default_config_points_at_upstream_urls():
    config = CorpusConfig.default()
    assert all(origin.startswith("https://") for origin in config.sources.values())


def test_fetch_copies_and_fingerprints(source_dir, tmp_path):
    destination = tmp_path / "fetched"
    report = fetch_sources(CorpusConfig.offline(source_dir), destination)
    assert len(report.sources) == 3
    for fetched in report.sources:
        assert fetched.stored_path.exists()
        assert fetched.size == fetched.stored_path.stat().st_size
        assert fetched.sha256 and len(fetched.sha256) == 64
    names = {f.stored_path.name for f in report.sources}
    assert names == {"capec.xml", "cwe.xml", "cve.json"}


def test_fetch_empty_file_is_an_error(tmp_path):
    empty = tmp_path / "sources"
    empty.mkdir()
    (empty / "capec.xml").write_bytes(b"")
    config = CorpusConfig.offline(empty, databases=("CAPEC",))
    with pytest.raises(FetchError) as err:
        fetch_sources(config, tmp_path / "out")
    assert "CAPEC" in str(err.value)


def test_gzip_container_is_unwrapped():
    payload = b"<corpus/>"
    assert maybe_decompress(gzip.compress(payload)) == payload


def test_zip_container_is_unwrapped():
    payload = b'{"CVE_Items": []}'
    buffer = io.BytesIO()
    with zipfile.ZipFile(buffer, "w") as archive:
        archive.writestr("nvdcve-1.1-2019.json", payload)
    assert maybe_decompress(buffer.getvalue()) == payload


def test_plain_bytes_pass_through():
    assert maybe_decompress(b"plain") == b"plain"
