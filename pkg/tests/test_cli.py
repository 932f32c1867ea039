import json

import pytest

from matprng.cli import main


FIB_DOC = {
    "p": "3",
    "t": 4,
    "matrix": [["0", "1"], ["1", "1"]],
    "u0": ["1", "0"],
    "v": ["1", "0"],
    "level": "thm1",
    "N_schedule": ["24", "216"],
    "V": 4,
    "s_max": 5,
    "count": 16,
    "vmvt": [[1, 1, 2], [2, 1, 2], [2, 2, 2]],
}


@pytest.fixture
def fib_config(tmp_path) -> str:
    path = tmp_path / "fib.json"
    path.write_text(json.dumps(FIB_DOC))
    return str(path)


def write_config(tmp_path, doc, name="cfg.json") -> str:
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


class TestValidate:
    def test_accepted(self, fib_config, tmp_path, capsys):
        assert main(["validate", "--config", fib_config]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["outcome"] == "accepted"

    def test_rejected_multiple_roots(self, tmp_path, capsys):
        doc = dict(FIB_DOC, p="5")
        cfg = write_config(tmp_path, doc)
        assert main(["validate", "--config", cfg]) == 2
        out = json.loads(capsys.readouterr().out)
        assert out["reason"] == "multiple-roots-mod-p"

    def test_malformed_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text('{"p": 3,')
        assert main(["validate", "--config", str(path)]) == 1

    def test_unknown_key(self, tmp_path):
        cfg = write_config(tmp_path, dict(FIB_DOC, typo_key=1))
        assert main(["validate", "--config", cfg]) == 1

    def test_missing_config_flag(self):
        assert main(["validate"]) == 1


class TestPeriod:
    def test_table(self, fib_config, tmp_path):
        out = tmp_path / "period.csv"
        assert main(["period", "--config", fib_config, "--out", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "s,tau_s"
        assert lines[1:] == ["1,8", "2,24", "3,72", "4,216", "5,648"]
        summary = json.loads((tmp_path / "period.csv.json").read_text())
        assert summary == {"beta_star": 1, "s_star": 1, "tau_star": 8, "w": 1}

    def test_single_row(self, tmp_path):
        cfg = write_config(tmp_path, dict(FIB_DOC, s_max=1))
        out = tmp_path / "p.csv"
        main(["period", "--config", cfg, "--out", str(out)])
        assert out.read_text().splitlines()[1:] == ["1,8"]

    def test_rejected_exits_2(self, tmp_path):
        cfg = write_config(tmp_path, dict(FIB_DOC, p="5"))
        assert main(["period", "--config", cfg]) == 2


class TestGen:
    def test_vector_rows(self, fib_config, capsys):
        assert main(["gen", "--config", fib_config]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "n,u0,u1"
        assert lines[1] == "0,1,0"
        assert len(lines) == 17

    def test_scalar_and_binary(self, tmp_path):
        binary = tmp_path / "stream.bin"
        doc = dict(FIB_DOC, scalar=True, binary_out=str(binary))
        cfg = write_config(tmp_path, doc)
        out = tmp_path / "gen.csv"
        assert main(["gen", "--config", cfg, "--out", str(out)]) == 0
        from matprng.generator import load_records

        with open(binary, "rb") as fh:
            values = list(load_records(fh))
        rows = out.read_text().splitlines()[1:]
        assert [int(r.split(",")[1]) for r in rows] == values


class TestGuards:
    def test_discrepancy_point_cap_exits_3(self, tmp_path):
        doc = dict(FIB_DOC, N="5000")
        doc.pop("N_schedule")
        cfg = write_config(tmp_path, doc)
        assert main(["discrepancy", "--config", cfg]) == 3


class TestRowContents:
    def test_expsum(self, fib_config, capsys):
        assert main(["expsum", "--config", fib_config]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0].startswith("N,rho,abs_S,S_over_N")
        assert len(lines) == 3

    def test_vmvt_counts(self, fib_config, capsys):
        assert main(["vmvt", "--config", fib_config]) == 0
        lines = capsys.readouterr().out.splitlines()
        counts = {tuple(line.split(",")[:3]): int(line.split(",")[3]) for line in lines[1:]}
        assert counts[("1", "1", "2")] == 2
        assert counts[("2", "1", "2")] == 6
        assert counts[("2", "2", "2")] == 6

    def test_discrepancy_row(self, fib_config, capsys):
        assert main(["discrepancy", "--config", fib_config]) == 0
        lines = capsys.readouterr().out.splitlines()
        row216 = next(l for l in lines[1:] if l.startswith("216,"))
        cells = row216.split(",")
        assert cells[3] == "761/6561"
        assert cells[6] == "true"

    def test_bounds_json(self, fib_config, tmp_path):
        out = tmp_path / "bounds.json"
        assert main(["bounds", "--config", fib_config, "--format", "json", "--out", str(out)]) == 0
        doc = json.loads(out.read_text())
        assert len(doc["rows"]) == 2
        assert all(float(r["S_over_N"]) <= 1.0 for r in doc["rows"])

    def test_report_sections(self, fib_config, tmp_path):
        out = tmp_path / "report.json"
        assert main(["report", "--config", fib_config, "--out", str(out)]) == 0
        doc = json.loads(out.read_text())
        assert doc["validate"]["outcome"] == "accepted"
        assert {"period", "expsum", "discrepancy", "vmvt", "reduction_residuals"} <= set(doc)
        assert all(s["nonnegative"] for s in doc["reduction_residuals"]["samples"])


class TestDeterminism:
    COMMANDS = ["validate", "period", "gen", "expsum", "discrepancy", "vmvt", "bounds", "report"]

    def _artifacts(self, tmp_path, tag) -> dict:
        out = {}
        for name in sorted(tmp_path.glob(f"{tag}*")):
            out[name.name.replace(tag, "")] = name.read_bytes()
        return out

    @pytest.mark.parametrize("command", COMMANDS)
    @pytest.mark.parametrize("fmt", ["csv", "json"])
    def test_reruns_and_threads_byte_identical(self, command, fmt, tmp_path):
        doc = dict(FIB_DOC, binary_out=str(tmp_path / "run_a.bin"))
        cfg_a = write_config(tmp_path, doc, "cfg_a.json")
        runs = {}
        for tag, threads in (("run_a", 1), ("run_b", 1), ("run_c", 4)):
            doc = dict(FIB_DOC, binary_out=str(tmp_path / f"{tag}.bin"))
            cfg = write_config(tmp_path, doc, f"cfg_{tag}.json")
            code = main(
                [command, "--config", cfg, "--out", str(tmp_path / f"{tag}.out"),
                 "--threads", str(threads), "--format", fmt, "--seed", "0"]
            )
            assert code == 0
            runs[tag] = self._artifacts(tmp_path, tag)
        assert runs["run_a"] == runs["run_b"]
        assert runs["run_a"] == runs["run_c"]
