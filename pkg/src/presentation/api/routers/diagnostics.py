"""
Router de FastAPI para Diagnósticos
cellshot
"""

from fastapi import APIRouter, Depends, File, UploadFile

from src.application.services.fit_service import FitService
from src.infrastructure.repositories.csv.csv_dataset_repository import CsvDatasetRepository
from src.presentation.api.dependencies import FitForm
from src.presentation.api.schemas.fit_schema import DiagnosticsResponseSchema

router = APIRouter(
    prefix="/diagnostics",
    tags=["Diagnósticos"],
)


@router.post(
    "",
    response_model=DiagnosticsResponseSchema,
    summary="Celdas y filas marcadas como outliers",
)
async def diagnosticar(file: UploadFile = File(...), form: FitForm = Depends()):
    data = CsvDatasetRepository().cargar(await file.read(), form.response)
    reporte = FitService(form.estimator_service()).diagnose(
        data, form.method, seed=form.seed, threshold=form.threshold
    )
    return DiagnosticsResponseSchema.from_entity(reporte)
