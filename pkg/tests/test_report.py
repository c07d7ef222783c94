"""Report bundle: files on disk, manifest integrity, CSV shape, determinism."""

import json
from fractions import Fraction

import jsonschema
import pytest
from conftest import load_schema

from altmoments import DiscreteMeasure, LaplaceExponentData
from altmoments.cli import main
from altmoments.report import render_report

MIXED = LaplaceExponentData(
    drift=Fraction(1, 2), jump_measure=DiscreteMeasure([(Fraction(1, 2), Fraction(1, 2))])
)

EXPECTED_OUTPUTS = [
    "phi.png",
    "phi.csv",
    "qmatrix.png",
    "qmatrix.csv",
    "pmf.png",
    "pmf.csv",
    "reconstruct.png",
    "reconstruct.csv",
]


@pytest.fixture(scope="module")
def bundle(tmp_path_factory):
    outdir = tmp_path_factory.mktemp("report")
    manifest = render_report(MIXED, n=5, outdir=str(outdir), seed=42, count=400)
    return outdir, manifest


class TestBundle:
    def test_manifest_lists_every_file(self, bundle):
        outdir, manifest = bundle
        assert manifest == {"seed": 42, "outputs": EXPECTED_OUTPUTS}
        jsonschema.validate(manifest, load_schema("report_manifest"))
        for name in EXPECTED_OUTPUTS + ["manifest.json"]:
            assert (outdir / name).is_file()

    def test_manifest_file_matches_return_value(self, bundle):
        outdir, manifest = bundle
        on_disk = json.loads((outdir / "manifest.json").read_text(encoding="utf-8"))
        assert on_disk == manifest

    def test_pngs_are_pngs(self, bundle):
        outdir, _ = bundle
        for name in EXPECTED_OUTPUTS:
            if name.endswith(".png"):
                assert (outdir / name).read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"

    def test_csv_headers(self, bundle):
        outdir, _ = bundle
        headers = {
            "phi.csv": "kind,lam,phi",
            "qmatrix.csv": "n,m,q",
            "pmf.csv": "parts,exact,empirical",
            "reconstruct.csv": "x,F_step,F_exact",
        }
        for name, header in headers.items():
            assert (outdir / name).read_text(encoding="utf-8").splitlines()[0] == header

    def test_phi_csv_nodes_are_exact(self, bundle):
        outdir, _ = bundle
        rows = [
            line.split(",")
            for line in (outdir / "phi.csv").read_text(encoding="utf-8").splitlines()[1:]
            if line.startswith("node,")
        ]
        assert len(rows) == 6
        # phi(1) = 1/2 + 1/2 * (1 - 1/2) = 3/4 for the mixed input
        assert rows[1] == ["node", "1", "0.75"]

    def test_qmatrix_csv_rows_sum_to_one(self, bundle):
        outdir, _ = bundle
        sums: dict[str, float] = {}
        for line in (outdir / "qmatrix.csv").read_text(encoding="utf-8").splitlines()[1:]:
            n, _, q = line.split(",")
            sums[n] = sums.get(n, 0.0) + float(q)
        assert set(sums) == {"1", "2", "3", "4", "5"}
        assert all(abs(total - 1.0) < 1e-9 for total in sums.values())

    def test_pmf_csv_covers_the_support(self, bundle):
        outdir, _ = bundle
        lines = (outdir / "pmf.csv").read_text(encoding="utf-8").splitlines()[1:]
        # 2^(5-1) compositions of 5, all with positive probability here
        assert len(lines) == 16
        assert sum(float(line.split(",")[1]) for line in lines) == pytest.approx(1.0)

    def test_reconstruct_csv_tracks_the_exact_cdf(self, bundle):
        outdir, _ = bundle
        lines = (outdir / "reconstruct.csv").read_text(encoding="utf-8").splitlines()[1:]
        gaps = [abs(float(f) - float(g)) for _, f, g in (line.split(",") for line in lines)]
        assert max(gaps) < 0.05


class TestDeterminism:
    def test_same_seed_renders_identical_csv(self, tmp_path):
        manifests = []
        for sub in ("a", "b"):
            outdir = tmp_path / sub
            manifests.append(render_report(MIXED, n=4, outdir=str(outdir), seed=7, count=300))
        assert manifests[0] == manifests[1]
        for name in EXPECTED_OUTPUTS:
            if name.endswith(".csv"):
                assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


class TestCliEntry:
    def test_report_subcommand(self, tmp_path, capsys):
        outdir = tmp_path / "out"
        code = main([
            "report",
            '{"drift": "0", "nutilde": {"atoms": [{"x": "1/2", "w": "1"}]}}',
            "--n", "4", "--seed", "13", "--count", "200", "--outdir", str(outdir),
        ])
        assert code == 0
        manifest = json.loads(capsys.readouterr().out)
        jsonschema.validate(manifest, load_schema("report_manifest"))
        assert manifest["seed"] == 13
        for name in manifest["outputs"]:
            assert (outdir / name).is_file()
