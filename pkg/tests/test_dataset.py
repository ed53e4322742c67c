import numpy as np
import pytest

from qcorrkit.dataset import (
    CSV_HEADER,
    build_dataset,
    read_dataset_csv,
    write_dataset_csv,
)
from qcorrkit.states import StateFamily


class TestBuildDataset:
    def test_bell_sweep_endpoints(self):
        data = build_dataset(StateFamily("bell"), "no_wmr", 0.0, points=101)
        assert len(data) == 101 and data.sweep_var == "p"
        # p = 0 row: the pristine Bell vector [jsd, C, F, QS, chi], target 1/2
        np.testing.assert_allclose(
            data.features[0],
            [0.557923045284144, 1.0, 1.0, 6.0, 2.0],
            atol=1e-9,
        )
        assert data.targets[0] == pytest.approx(0.5, abs=1e-12)
        # p = 1 row: every feature at its classical value, discord gone
        np.testing.assert_allclose(
            data.features[-1], [0.0, 0.0, 2 / 3, 2.0, 1.0], atol=1e-9
        )
        assert data.targets[-1] == pytest.approx(0.0, abs=1e-12)

    def test_protected_sweep_is_finite_and_monotone_in_q(self):
        data = build_dataset(StateFamily("werner", 0.8), "wmr2", 1.0, points=60)
        assert data.sweep_var == "q"
        assert np.isfinite(data.features).all() and np.isfinite(data.targets).all()
        assert (np.diff(data.sweep_values) > 0).all()
        assert data.sweep_values[0] == 0.0 and data.sweep_values[-1] == pytest.approx(0.99)

    def test_minimum_rows_enforced(self):
        with pytest.raises(ValueError):
            build_dataset(StateFamily("bell"), "no_wmr", 0.0, points=20)

    def test_unknown_scenario(self):
        with pytest.raises(ValueError):
            build_dataset(StateFamily("bell"), "wmr1", 0.0, points=60)


class TestCsvRoundTrip:
    def test_write_read(self, tmp_path):
        data = build_dataset(StateFamily("mems", 0.8), "no_wmr", 1.0, points=55)
        path = tmp_path / "rows.csv"
        write_dataset_csv(path, data)
        header = path.read_text().splitlines()[0]
        assert header == ",".join(CSV_HEADER)
        back = read_dataset_csv(path)
        np.testing.assert_array_equal(back.features, data.features)
        np.testing.assert_array_equal(back.targets, data.targets)
        np.testing.assert_array_equal(back.sweep_values, data.sweep_values)
        assert back.scenario == data.scenario and back.eta == data.eta

    def test_parse_error_names_row_and_column(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text(
            ",".join(CSV_HEADER)
            + "\nno_wmr,0.0,p,0.0,0.1,0.2,0.3,0.4,0.5,oops\n"
        )
        with pytest.raises(ValueError, match=r"row 2.*'tdd'.*oops"):
            read_dataset_csv(path)

    def test_header_mismatch(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("a,b,c\n1,2,3\n")
        with pytest.raises(ValueError, match="unexpected header"):
            read_dataset_csv(path)

    def test_field_count_mismatch(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text(",".join(CSV_HEADER) + "\nno_wmr,0.0,p,0.0,1.0\n")
        with pytest.raises(ValueError, match="row 2 has 5 fields"):
            read_dataset_csv(path)

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text("")
        with pytest.raises(ValueError, match="empty"):
            read_dataset_csv(path)
