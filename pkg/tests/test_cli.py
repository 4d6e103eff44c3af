import json

import numpy as np
import pytest

from lagt import SampledSignal, relative_error
from lagt.cli import main, read_signal, write_signal
from lagt.fixtures import source_signal


@pytest.fixture()
def source_csv(tmp_path):
    path = tmp_path / "source.csv"
    write_signal(path, source_signal())
    return path


def test_signal_csv_round_trip(tmp_path, source_csv):
    sig = read_signal(source_csv)
    ref = source_signal()
    assert sig.step == ref.step
    assert np.array_equal(sig.values, ref.values)


def test_signal_raw_f32_round_trip(tmp_path):
    ref = source_signal()
    raw = tmp_path / "trace.f32"
    ref.values.astype("<f4").tofile(raw)
    raw.with_suffix(".json").write_text(json.dumps({"step": ref.step}))
    sig = read_signal(raw)
    assert sig.step == ref.step
    assert np.allclose(sig.values, ref.values, atol=1e-7)


def test_forward_happy_path(tmp_path, source_csv):
    out = tmp_path / "spec.json"
    rc = main(["forward", "--algorithm", "2", "--eta", "1600", "--ncoeff",
               "920", "--precision", "f64", str(source_csv),
               "--output", str(out)])
    assert rc == 0
    doc = json.loads(out.read_text())
    assert doc["eta"] == 1600.0
    assert len(doc["coeffs"]) == 921
    assert doc["meta"]["algorithm"] == 2


def test_forward_missing_eta_exits_usage(source_csv):
    with pytest.raises(SystemExit) as exc:
        main(["forward", str(source_csv), "--ncoeff", "100"])
    assert exc.value.code == 1


def test_forward_guard_exit(tmp_path, source_csv):
    rc = main(["forward", "--algorithm", "3", "--eta", "5000", "--ncoeff",
               "100", str(source_csv), "--output", str(tmp_path / "s.json")])
    assert rc == 3
    rc = main(["forward", "--algorithm", "3", "--eta", "5000", "--ncoeff",
               "100", "--shift-doubling", str(source_csv),
               "--output", str(tmp_path / "s.json")])
    assert rc == 0


def test_forward_missing_file_exits_io(tmp_path):
    rc = main(["forward", "--eta", "100", "--ncoeff", "10",
               str(tmp_path / "nothere.csv")])
    assert rc == 2


def test_round_trip_through_cli(tmp_path, source_csv):
    spec_path = tmp_path / "spec.json"
    main(["forward", "--algorithm", "3", "--eta", "800", "--ncoeff", "700",
          str(source_csv), "--output", str(spec_path)])
    out_csv = tmp_path / "rec.csv"
    rc = main(["inverse", str(spec_path), "--step", "0.002",
               "--duration", "1.0", "--output", str(out_csv)])
    assert rc == 0
    rec = read_signal(out_csv)
    assert relative_error(source_signal(), rec) <= 1e-10


def test_inverse_zero_spectrum(tmp_path):
    spec_path = tmp_path / "zero.json"
    spec_path.write_text(json.dumps(
        {"eta": 100.0, "duration": 1.0, "coeffs": [0.0] * 32, "meta": {}}))
    out_csv = tmp_path / "zero.csv"
    rc = main(["inverse", str(spec_path), "--step", "0.01",
               "--duration", "1.0", "--output", str(out_csv)])
    assert rc == 0
    assert np.all(read_signal(out_csv).values == 0.0)


def test_inverse_via_fourier(tmp_path, source_csv):
    spec_path = tmp_path / "spec.json"
    main(["forward", "--algorithm", "3", "--eta", "600", "--ncoeff", "700",
          str(source_csv), "--output", str(spec_path)])
    out_csv = tmp_path / "rec.csv"
    rc = main(["inverse", str(spec_path), "--step", "0.002",
               "--duration", "1.0", "--via-fourier", "--output", str(out_csv)])
    assert rc == 0
    rec = read_signal(out_csv)
    ref = source_signal()
    sel = (ref.times > 0.05) & (ref.times < 0.95)
    assert relative_error(ref.values[sel], rec.values[sel]) <= 1e-6


def test_inverse_malformed_json(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["inverse", str(bad)]) == 2


def test_forward_deterministic(tmp_path, source_csv):
    outs = []
    for name in ("a.json", "b.json"):
        out = tmp_path / name
        main(["forward", "--algorithm", "2", "--eta", "800", "--ncoeff",
              "300", str(source_csv), "--output", str(out)])
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_batch_directory_ordering(tmp_path):
    src_dir = tmp_path / "traces"
    src_dir.mkdir()
    ref = source_signal()
    for i in range(5):
        write_signal(src_dir / f"trace{i}.csv",
                     SampledSignal(ref.values * (i + 1), ref.step))
    out_dir = tmp_path / "spectra"
    rc = main(["forward", "--algorithm", "2", "--eta", "600", "--ncoeff",
               "200", str(src_dir), "--output", str(out_dir)])
    assert rc == 0
    files = sorted(out_dir.iterdir())
    assert [f.name for f in files] == [f"trace{i}.spectrum.json" for i in range(5)]
    c0 = np.asarray(json.loads(files[0].read_text())["coeffs"])
    for i, f in enumerate(files):
        doc = json.loads(f.read_text())
        assert doc["meta"]["source"] == f"trace{i}.csv"
        scaled = np.asarray(doc["coeffs"])
        assert np.allclose(scaled, (i + 1) * c0, rtol=1e-10, atol=1e-12)


def test_batch_respects_thread_cap(tmp_path, monkeypatch):
    monkeypatch.setenv("LAGT_THREADS", "1")
    src_dir = tmp_path / "traces"
    src_dir.mkdir()
    ref = source_signal()
    for i in range(3):
        write_signal(src_dir / f"t{i}.csv", ref)
    out_dir = tmp_path / "spectra"
    rc = main(["forward", "--algorithm", "3", "--eta", "600", "--ncoeff",
               "150", str(src_dir), "--output", str(out_dir)])
    assert rc == 0
    assert len(list(out_dir.iterdir())) == 3


def test_bench_unknown_fixture(tmp_path):
    assert main(["bench", "wavelets", "--output-dir", str(tmp_path)]) == 1


def test_bench_source_eps_table(tmp_path):
    rc = main(["bench", "source", "--algorithm", "2", "--etas", "800,1600",
               "--ncoeffs", "300,500", "--output-dir", str(tmp_path)])
    assert rc == 0
    csv = (tmp_path / "source_alg2_eps.csv").read_text().splitlines()
    assert csv[0] == "n,eps_eta800.0,eps_eta1600.0"
    assert len(csv) == 3
    doc = json.loads((tmp_path / "source_alg2_eps.json").read_text())
    assert doc["meta"]["fixture"] == "source"


def test_bench_alg4_timing_table(tmp_path):
    rc = main(["bench", "bursts", "--algorithm", "4", "--eta", "200",
               "--ncoeff", "1024", "--segments", "1,2,4",
               "--output-dir", str(tmp_path)])
    assert rc == 0
    lines = (tmp_path / "bursts_alg4_timings.csv").read_text().splitlines()
    assert lines[0] == "p,eps,prec,step1,step2,total"
    assert len(lines) == 4


def test_bench_oracle_column(tmp_path):
    rc = main(["bench", "source", "--algorithm", "2", "--etas", "800",
               "--ncoeffs", "100,200", "--oracle", "--eta", "800",
               "--oracle-step", "1e-5", "--output-dir", str(tmp_path)])
    assert rc == 0
    header = (tmp_path / "source_alg2_eps.csv").read_text().splitlines()[0]
    assert header.endswith("eps_oracle")
