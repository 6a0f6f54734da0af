"""
Router de FastAPI para Ajustes
cellshot
"""

from fastapi import APIRouter, Depends, File, UploadFile

from src.application.services.fit_service import FitService
from src.infrastructure.repositories.csv.csv_dataset_repository import CsvDatasetRepository
from src.presentation.api.dependencies import FitForm
from src.presentation.api.schemas.fit_schema import FitReportJson

router = APIRouter(
    prefix="/fits",
    tags=["Ajustes"],
    responses={
        409: {"description": "Error de estimación"},
        422: {"description": "Dataset o parámetros inválidos"},
    },
)


@router.post(
    "",
    response_model=FitReportJson,
    summary="Ajustar un estimador a un CSV",
)
async def crear_ajuste(file: UploadFile = File(...), form: FitForm = Depends()):
    """Recibe el CSV como multipart y devuelve el reporte de ajuste"""
    data = CsvDatasetRepository().cargar(await file.read(), form.response)
    reporte = FitService(form.estimator_service()).fit(
        data, form.method, seed=form.seed, threshold=form.threshold
    )
    return FitReportJson.from_entity(reporte)
