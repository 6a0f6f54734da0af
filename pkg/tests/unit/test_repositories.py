"""Tests de los repositorios CSV y de reportes."""

import json

import numpy as np
import pytest

from src.domain.entities.experiment_report import ExperimentReport, ReplicateRecord, ReportRecord
from src.domain.entities.fit_report import FitReport, FlaggedCell
from src.domain.exceptions.domain_exceptions import (
    ColumnNotFoundException,
    InvalidDatasetException,
    InvalidParameterException,
)
from src.infrastructure.repositories.csv.csv_dataset_repository import CsvDatasetRepository
from src.infrastructure.repositories.csv.file_report_repository import FileReportRepository


@pytest.fixture
def repo():
    return CsvDatasetRepository()


def _escribir(tmp_path, texto, nombre="datos.csv"):
    ruta = tmp_path / nombre
    ruta.write_text(texto, encoding="utf-8")
    return ruta


class TestCsvDatasetRepository:

    def test_loads_response_and_predictors(self, repo, tmp_path):
        ruta = _escribir(tmp_path, "a, y ,b\n1,2,3\n4,5,6.5\n")
        datos = repo.cargar(ruta, "y")
        assert datos.column_names == ("a", "b")
        assert datos.response_name == "y"
        np.testing.assert_array_equal(datos.y, [2.0, 5.0])
        np.testing.assert_array_equal(datos.X, [[1.0, 3.0], [4.0, 6.5]])

    def test_loads_bytes(self, repo):
        datos = repo.cargar(b"y,x\n1,2\n3,4\n5,7\n", "y")
        assert datos.n == 3

    def test_missing_file(self, repo, tmp_path):
        with pytest.raises(InvalidDatasetException, match="No existe"):
            repo.cargar(tmp_path / "nada.csv", "y")

    def test_empty_file(self, repo, tmp_path):
        with pytest.raises(InvalidDatasetException):
            repo.cargar(_escribir(tmp_path, ""), "y")

    def test_header_only(self, repo, tmp_path):
        with pytest.raises(InvalidDatasetException, match="filas"):
            repo.cargar(_escribir(tmp_path, "y,x\n"), "y")

    def test_missing_response(self, repo, tmp_path):
        with pytest.raises(ColumnNotFoundException, match="'peso'"):
            repo.cargar(_escribir(tmp_path, "y,x\n1,2\n"), "peso")

    def test_only_response(self, repo, tmp_path):
        with pytest.raises(InvalidDatasetException, match="predictor"):
            repo.cargar(_escribir(tmp_path, "y\n1\n2\n"), "y")

    def test_duplicate_header(self, repo, tmp_path):
        with pytest.raises(InvalidDatasetException, match="repetidas"):
            repo.cargar(_escribir(tmp_path, "y,x,x\n1,2,3\n"), "y")

    @pytest.mark.parametrize("celda", ["", "NA", "nan"])
    def test_missing_cell_names_position(self, repo, tmp_path, celda):
        ruta = _escribir(tmp_path, f"y,x\n1,2\n3,{celda}\n")
        with pytest.raises(InvalidDatasetException, match=r"fila 1 \(línea 3\), columna 'x'"):
            repo.cargar(ruta, "y")

    @pytest.mark.parametrize("celda", ["abc", "inf", "1,5"])
    def test_non_numeric(self, repo, tmp_path, celda):
        ruta = _escribir(tmp_path, f'y,x\n1,2\n3,"{celda}"\n')
        with pytest.raises(InvalidDatasetException, match="columna 'x'"):
            repo.cargar(ruta, "y")

    def test_ragged_rows(self, repo, tmp_path):
        with pytest.raises(InvalidDatasetException):
            repo.cargar(_escribir(tmp_path, "y,x\n1,2\n3,4,5,6\n"), "y")


class TestFileReportRepository:

    @pytest.fixture
    def fit_report(self):
        return FitReport(
            method="shooting-bi", response="y", column_names=("a", "b"), slopes=(1.5, -0.25),
            intercept=0.1, scales=(0.5, 0.6), threshold=0.5, converged=True, n=4,
            flagged_cells=(FlaggedCell(0, "a", 0.0), FlaggedCell(0, "b", 0.0),
                           FlaggedCell(2, "b", 0.0)),
            flagged_rows=(0,), rows_with_flagged_cells=2, outer_loops=3,
        )

    def test_fit_json_is_stable(self, fit_report):
        repo = FileReportRepository()
        texto = repo.fit_json(fit_report)
        assert texto == repo.fit_json(fit_report)
        assert texto.endswith("\n")
        d = json.loads(texto)
        assert d["slopes"] == [{"column": "a", "value": 1.5}, {"column": "b", "value": -0.25}]
        assert d["flagged_rows"] == [0]

    def test_diagnose_csv(self, fit_report):
        texto = FileReportRepository().diagnose_csv(fit_report)
        assert texto.split("\n\n") == [
            "row,column,weight\n0,a,0.0\n0,b,0.0\n2,b,0.0",
            "flagged_row\n0",
            "summary,value\nflagged_cells,3\nrows_with_flagged_cells,2\nwholly_flagged_rows,1\n",
        ]

    def test_experiment_csv_writes_na(self, tmp_path):
        reporte = ExperimentReport(
            name="t", metric="n_mse", estimators=("ls", "s"),
            records=(ReportRecord("ls", "dense", 0.0, 1.25, 1, 0),
                     ReportRecord("s", "dense", 0.0, None, 0, 1)),
            replicates=1, seed=0, replicate_log=(ReplicateRecord(0, 9, ("dense@eps=0:s",)),),
        )
        repo = FileReportRepository()
        assert repo.experiment_csv(reporte) == (
            "block,estimator,eps=0\ndense,ls,1.25\ndense,s,NA\n"
        )
        ruta = repo.escribir(repo.experiment_json(reporte), tmp_path / "sub" / "t.json")
        assert json.loads(ruta.read_text(encoding="utf-8"))["failures"] == 1

    def test_unwritable_destination(self, tmp_path):
        archivo = tmp_path / "archivo.txt"
        archivo.write_text("x", encoding="utf-8")
        with pytest.raises(InvalidParameterException, match="No se pudo escribir"):
            FileReportRepository().escribir("{}", archivo / "t.json")
