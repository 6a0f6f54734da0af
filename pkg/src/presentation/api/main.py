"""
Aplicación Principal de FastAPI
cellshot

Expone el ajuste, el diagnóstico por celdas y la calibración por HTTP.
"""

import logging

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from src.domain.exceptions.domain_exceptions import EstimationException, ValidationException
from src.infrastructure.config.settings import configure_logging
from src.presentation.api.routers import calibration, diagnostics, fits

logger = logging.getLogger(__name__)

VERSION = "1.0.0"

configure_logging()


# ============================================================================
# Crear aplicación FastAPI
# ============================================================================

app = FastAPI(
    title="cellshot",
    description="""
    API de regresión S por coordenadas (shooting S) robusta a outliers
    celda a celda.

    Permite:
    - Ajustar LS, S, MM y shooting S a un CSV
    - Marcar celdas y observaciones atípicas
    - Calibrar las constantes de las funciones ρ
    """,
    version=VERSION,
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_methods=["*"],
    allow_headers=["*"],
)


# ============================================================================
# Incluir Routers (Prefijo /api)
# ============================================================================

api_prefix = "/api"

app.include_router(fits.router, prefix=api_prefix)
app.include_router(diagnostics.router, prefix=api_prefix)
app.include_router(calibration.router, prefix=api_prefix)


# ============================================================================
# Endpoints de Health Check
# ============================================================================

@app.get(
    "/api/health",
    tags=["Health"],
    summary="Health check",
)
def health_check():
    return {"api": "healthy", "version": VERSION}


# ============================================================================
# Manejo de Errores Global
# ============================================================================

@app.exception_handler(ValidationException)
async def validation_exception_handler(request: Request, exc: ValidationException):
    logger.info("Entrada inválida en %s %s: %s", request.method, request.url.path, exc)
    return JSONResponse(
        status_code=422,
        content={"detail": str(exc), "type": type(exc).__name__},
    )


@app.exception_handler(EstimationException)
async def estimation_exception_handler(request: Request, exc: EstimationException):
    logger.warning("Error de estimación en %s %s: %s", request.method, request.url.path, exc)
    contenido = {"detail": str(exc), "type": type(exc).__name__}
    columnas = getattr(exc, "columns", None)
    if columnas:
        contenido["columns"] = columnas
    return JSONResponse(status_code=409, content=contenido)


@app.exception_handler(Exception)
async def global_exception_handler(request: Request, exc: Exception):
    """Manejador global de excepciones"""
    logger.exception("Error no manejado en %s %s", request.method, request.url.path)
    return JSONResponse(
        status_code=500,
        content={"detail": "Error interno del servidor", "type": "internal_server_error"},
    )


# ============================================================================
# Ejecutar aplicación (solo para desarrollo local)
# ============================================================================

if __name__ == "__main__":
    import uvicorn

    uvicorn.run(
        "src.presentation.api.main:app",
        host="0.0.0.0",
        port=8000,
        reload=True,
        log_level="info",
    )
