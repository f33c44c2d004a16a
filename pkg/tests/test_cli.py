import re

import pytest

from evroute.cli import BenchReport, BenchRow, main
from evroute.instance import parse_instance


@pytest.fixture
def instance_file(tmp_path):
    path = tmp_path / "small.txt"
    assert main(["gen", "--customers", "5", "--stations", "1", "--seed", "2",
                 "--out", str(path)]) == 0
    return path


def mask_wall_time(csv_text):
    lines = csv_text.splitlines()
    return [",".join(line.split(",")[:-1]) for line in lines]


class TestGen:
    def test_round_trips_through_parser(self, instance_file, capsys):
        text = instance_file.read_text()
        inst = parse_instance(text)
        assert len(inst.customer_ids) == 5
        assert len(inst.station_ids) == 1

    def test_prints_path(self, tmp_path, capsys):
        out = tmp_path / "x.txt"
        assert main(["gen", "--customers", "3", "--stations", "0", "--seed", "1",
                     "--out", str(out)]) == 0
        assert capsys.readouterr().out.strip() == str(out)

    def test_byte_identical_for_same_flags(self, tmp_path):
        a, b = tmp_path / "a.txt", tmp_path / "b.txt"
        for out in (a, b):
            assert main(["gen", "--customers", "7", "--stations", "2", "--seed", "3",
                         "--out", str(out)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_zero_customers_fails(self, tmp_path, capsys):
        code = main(["gen", "--customers", "0", "--stations", "1", "--seed", "1",
                     "--out", str(tmp_path / "z.txt")])
        assert code == 1
        assert "error" in capsys.readouterr().err


class TestBench:
    def test_single_cell_row_shape(self, instance_file, capsys):
        code = main(["bench", "--instances", str(instance_file), "--solvers", "ga",
                     "--seeds", "1", "--generations", "20", "--pop", "20"])
        assert code == 0
        out = capsys.readouterr().out
        lines = out.splitlines()
        assert lines[0] == "instance,solver,seed,best_fitness,feasible,wall_time_s"
        assert len(lines) == 2
        name, solver, seed, fitness, feasible, wall = lines[1].split(",")
        assert name == str(instance_file)
        assert solver == "ga"
        assert seed == "0"
        assert re.fullmatch(r"\d+\.\d{6}", fitness)
        assert feasible in ("true", "false")
        assert re.fullmatch(r"\d+\.\d{3}", wall)
        assert float(wall) >= 0.0

    def test_row_order_and_grid(self, instance_file, tmp_path, capsys):
        other = tmp_path / "other.txt"
        main(["gen", "--customers", "4", "--stations", "0", "--seed", "9",
              "--out", str(other)])
        capsys.readouterr()
        code = main(["bench", "--instances", f"{instance_file},{other}",
                     "--solvers", "nn,exact", "--seeds", "2"])
        assert code == 0
        rows = [line.split(",")[:3] for line in capsys.readouterr().out.splitlines()[1:]]
        assert rows == [
            [str(instance_file), "nn", "0"],
            [str(instance_file), "nn", "1"],
            [str(instance_file), "exact", "0"],
            [str(instance_file), "exact", "1"],
            [str(other), "nn", "0"],
            [str(other), "nn", "1"],
            [str(other), "exact", "0"],
            [str(other), "exact", "1"],
        ]

    def test_deterministic_fitness_columns(self, instance_file, capsys):
        args = ["bench", "--instances", str(instance_file),
                "--solvers", "ga,nn,tabu,aco,exact", "--seeds", "2",
                "--generations", "15", "--pop", "15", "--iterations", "40", "--ants", "4"]
        assert main(args) == 0
        first = capsys.readouterr().out
        assert main(args) == 0
        second = capsys.readouterr().out
        assert mask_wall_time(first) == mask_wall_time(second)

    def test_out_file_matches_stdout(self, instance_file, tmp_path, capsys):
        report_path = tmp_path / "report.csv"
        code = main(["bench", "--instances", str(instance_file), "--solvers", "nn",
                     "--seeds", "1", "--out", str(report_path)])
        assert code == 0
        assert report_path.read_text() == capsys.readouterr().out

    def test_unknown_solver(self, instance_file, capsys):
        code = main(["bench", "--instances", str(instance_file), "--solvers", "bogus",
                     "--seeds", "1"])
        assert code == 1
        assert "unknown solver" in capsys.readouterr().err

    def test_missing_file(self, capsys):
        code = main(["bench", "--instances", "nope.txt", "--solvers", "nn", "--seeds", "1"])
        assert code == 1
        assert "nope.txt" in capsys.readouterr().err

    def test_invalid_flag_value(self, instance_file, capsys):
        code = main(["bench", "--instances", str(instance_file), "--solvers", "nn",
                     "--seeds", "abc"])
        assert code == 1

    def test_parse_error_names_file(self, tmp_path, capsys):
        bad = tmp_path / "bad.txt"
        bad.write_text("NAME x\nEOF\n")
        code = main(["bench", "--instances", str(bad), "--solvers", "nn", "--seeds", "1"])
        assert code == 1
        assert "bad.txt" in capsys.readouterr().err


class TestReportRoundTrip:
    def test_csv_round_trip_equality(self):
        report = BenchReport(
            rows=[
                BenchRow("a.txt", "ga", 0, 123.456789, True, 0.123),
                BenchRow("b.txt", "tabu", 3, 20345.5, False, 35.655),
            ]
        )
        text = report.to_csv()
        parsed = BenchReport.from_csv(text)
        assert parsed.to_csv() == text
        assert BenchReport.from_csv(parsed.to_csv()) == parsed

    def test_bench_output_reparses(self, instance_file, capsys):
        assert main(["bench", "--instances", str(instance_file), "--solvers", "nn,exact",
                     "--seeds", "2"]) == 0
        text = capsys.readouterr().out
        report = BenchReport.from_csv(text)
        assert report.to_csv() == text
        assert BenchReport.from_csv(report.to_csv()) == report

    def test_rejects_bad_header(self):
        with pytest.raises(ValueError):
            BenchReport.from_csv("nope\n")
