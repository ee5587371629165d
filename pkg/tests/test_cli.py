"""Command-line interface, exercised end-to-end with CliRunner."""

import json
import shutil

import pytest
from click.testing import CliRunner

from cybok import data
from cybok.cli import main


@pytest.fixture(scope="module")
def runner():
    return CliRunner()


@pytest.fixture(scope="module")
def model_path():
    return str(data.directory() / data.MODEL_FILE)


@pytest.fixture(scope="module")
def store(tmp_path_factory, runner):
    """A fully built store: fetched sources, snapshot, index."""
    root = tmp_path_factory.mktemp("store")
    sources = root / "sources"
    result = runner.invoke(
        main, ["update", "--bundled", "--out", str(sources)]
    )
    assert result.exit_code == 0, result.output
    result = runner.invoke(
        main, ["snapshot", "--sources", str(sources), "--out", str(root)]
    )
    assert result.exit_code == 0, result.output
    result = runner.invoke(main, ["index", "--snapshot", str(root)])
    assert result.exit_code == 0, result.output
    return root


class TestUpdate:
    def test_reports_each_source(self, runner, tmp_path):
        result = runner.invoke(main, ["update", "--bundled", "--out", str(tmp_path)])
        assert result.exit_code == 0
        for database in ("CAPEC", "CWE", "CVE"):
            assert database in result.output
        assert (tmp_path / "capec.xml").exists()

    def test_database_subset(self, runner, tmp_path):
        result = runner.invoke(
            main, ["update", "--bundled", "--db", "capec", "--out", str(tmp_path)]
        )
        assert result.exit_code == 0
        assert (tmp_path / "capec.xml").exists()
        assert not (tmp_path / "cwe.xml").exists()

    def test_offline_dir(self, runner, tmp_path):
        offline = tmp_path / "offline"
        offline.mkdir()
        for name in data.SOURCE_FILES:
            (offline / name).write_bytes(data.read_bytes(name))
        result = runner.invoke(
            main,
            ["update", "--offline-dir", str(offline), "--out", str(tmp_path / "out")],
        )
        assert result.exit_code == 0

    def test_missing_offline_source_fails_cleanly(self, runner, tmp_path):
        result = runner.invoke(
            main, ["update", "--offline-dir", str(tmp_path), "--out", str(tmp_path)]
        )
        assert result.exit_code != 0
        assert "Error" in result.output


class TestSnapshotAndIndex:
    def test_snapshot_reports_counts(self, runner, store):
        manifest = json.loads((store / "manifest.json").read_text())
        assert manifest["counts"] == {"CAPEC": 28, "CWE": 26, "CVE": 25}
        assert manifest["ingested_at"] == "2019-10-01T00:00:00Z"

    def test_index_lands_next_to_the_snapshot(self, store):
        assert (store / "index.cybok").exists()

    def test_index_out_elsewhere(self, runner, store, tmp_path):
        result = runner.invoke(
            main, ["index", "--snapshot", str(store), "--out", str(tmp_path)]
        )
        assert result.exit_code == 0
        assert (tmp_path / "index.cybok").exists()

    def test_snapshot_requires_sources(self, runner, tmp_path):
        result = runner.invoke(
            main,
            ["snapshot", "--sources", str(tmp_path), "--out", str(tmp_path / "s")],
        )
        assert result.exit_code != 0


class TestValidate:
    def test_bundled_model_is_valid(self, runner, model_path):
        result = runner.invoke(main, ["validate", "--model", model_path])
        assert result.exit_code == 0
        assert "OK" in result.output
        assert "11 assets" in result.output

    def test_broken_model_rejected(self, runner, tmp_path):
        bad = tmp_path / "bad.graphml"
        bad.write_bytes(
            b"""<graphml xmlns="http://graphml.graphdrawing.org/xmlns">
            <graph id="g" edgedefault="undirected">
            <node id="a"/><edge id="e" source="a" target="ghost"/>
            </graph></graphml>"""
        )
        result = runner.invoke(main, ["validate", "--model", str(bad)])
        assert result.exit_code != 0
        assert "ghost" in result.output


class TestAnalyze:
    def test_report_written_to_file(self, runner, store, model_path, tmp_path):
        out = tmp_path / "report.json"
        result = runner.invoke(
            main,
            ["analyze", "--model", model_path, "--index", str(store),
             "--target", "primary_proc", "--out", str(out)],
        )
        assert result.exit_code == 0, result.output
        report = json.loads(out.read_text())
        assert report["format"] == "cybok-report"
        assert [c["path"] for c in report["chains"]["chains"]] == [
            ["gps", "e_gps_serial", "primary_proc"],
            ["radio_imagery", "e_imagery_link", "primary_proc"],
        ]

    def test_bundled_store_is_the_default(self, runner, model_path):
        result = runner.invoke(main, ["analyze", "--model", model_path])
        assert result.exit_code == 0, result.output
        assert json.loads(result.output)["model"]["assets"] == 11

    def test_table_format(self, runner, store, model_path):
        result = runner.invoke(
            main,
            ["analyze", "--model", model_path, "--index", str(store),
             "--format", "table"],
        )
        assert result.exit_code == 0
        assert "Model Element" in result.output
        assert "CAPEC-627" in result.output

    def test_stale_index_names_the_remedy(self, runner, store, model_path, tmp_path):
        stale = tmp_path / "stale"
        stale.mkdir()
        # A snapshot of only one database, paired with the full index.
        sources = tmp_path / "sources"
        runner.invoke(main, ["update", "--bundled", "--db", "capec",
                             "--out", str(sources)])
        runner.invoke(main, ["snapshot", "--sources", str(sources),
                             "--out", str(stale)])
        shutil.copy(store / "index.cybok", stale / "index.cybok")
        result = runner.invoke(main, ["analyze", "--model", model_path,
                                      "--index", str(stale)])
        assert result.exit_code != 0
        assert "rebuild" in result.output


class TestSurfaceAndChains:
    def test_surface_json(self, runner, store, model_path):
        result = runner.invoke(
            main, ["surface", "--model", model_path, "--index", str(store)]
        )
        assert result.exit_code == 0
        doc = json.loads(result.output)
        assert [s["asset"] for s in doc["surface"]] == [
            "camera", "gcs_laptop", "gps",
            "radio_imagery", "radio_rc", "radio_telemetry",
        ]

    def test_chains_json(self, runner, store, model_path):
        result = runner.invoke(
            main,
            ["chains", "--model", model_path, "--index", str(store),
             "--target", "primary_proc", "--max-len", "4"],
        )
        assert result.exit_code == 0
        doc = json.loads(result.output)
        assert doc["target"] == "primary_proc"
        assert len(doc["chains"]) == 2

    def test_chains_unknown_target(self, runner, store, model_path):
        result = runner.invoke(
            main,
            ["chains", "--model", model_path, "--index", str(store),
             "--target", "ghost"],
        )
        assert result.exit_code != 0
        assert "ghost" in result.output


@pytest.fixture(scope="module")
def report_path(runner, store, model_path, tmp_path_factory):
    out = tmp_path_factory.mktemp("render") / "report.json"
    runner.invoke(
        main,
        ["analyze", "--model", model_path, "--index", str(store),
         "--target", "primary_proc", "--out", str(out)],
    )
    return out


class TestRender:
    def test_topology(self, runner, model_path, tmp_path):
        out = tmp_path / "topo.dot"
        result = runner.invoke(
            main,
            ["render", "--model", model_path, "--kind", "topology",
             "--out", str(out)],
        )
        assert result.exit_code == 0
        assert "digraph system" in out.read_text()

    def test_surface_needs_report(self, runner, model_path):
        result = runner.invoke(
            main, ["render", "--model", model_path, "--kind", "surface"]
        )
        assert result.exit_code != 0
        assert "--report" in result.output

    def test_surface_from_report(self, runner, model_path, report_path):
        result = runner.invoke(
            main,
            ["render", "--model", model_path, "--kind", "surface",
             "--report", str(report_path)],
        )
        assert result.exit_code == 0
        assert result.output.count("fillcolor") == 6

    def test_chains_from_report(self, runner, model_path, report_path):
        result = runner.invoke(
            main,
            ["render", "--model", model_path, "--kind", "chains",
             "--report", str(report_path)],
        )
        assert result.exit_code == 0
        assert result.output.count('color="#cc0000"') == 2


class TestServe:
    def test_help_shows_static_option(self, runner):
        result = runner.invoke(main, ["serve", "--help"])
        assert result.exit_code == 0
        assert "--static" in result.output
        assert "--port" in result.output


def test_verbose_flag_accepted(runner, model_path):
    result = runner.invoke(main, ["-v", "validate", "--model", model_path])
    assert result.exit_code == 0
