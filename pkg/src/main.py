import logging

from fastapi import APIRouter, FastAPI, HTTPException, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from src.config import config
from src.lib.errors import WorkbenchError
from src.middleware import LoggingMiddleware, RequestIDMiddleware
from src.routes import algebra, model, propositional, zf
from src.utils import constant

app = FastAPI(
    title="Fidel Workbench API",
    description="Fidel structures, C_omega valuations and bounded ZFC_omega checks",
    redirect_slashes=False,
    openapi_url="/service/api/v1/openapi.json",
    docs_url="/service/docs",
    redoc_url="/service/redoc",
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)
app.add_middleware(RequestIDMiddleware)
app.add_middleware(LoggingMiddleware)


@app.get("/health")
async def healthroot():
    return {"status": "OK"}


@app.exception_handler(RequestValidationError)
async def validation_exception_handler(request: Request, exc: RequestValidationError):
    errors = []
    for err in exc.errors():
        location = ".".join(str(part) for part in err.get("loc", ()))
        errors.append(f"{location}: {err.get('msg')}")
    return JSONResponse(
        status_code=400,
        content={"message": "Bad Request", "description": errors, "exitCode": constant.EXIT_USAGE},
    )


@app.exception_handler(HTTPException)
async def http_exception_handler(request: Request, exc: HTTPException):
    return JSONResponse(
        status_code=exc.status_code,
        content={"message": exc.detail, "path": request.url.path},
    )


@app.exception_handler(WorkbenchError)
async def workbench_exception_handler(request: Request, exc: WorkbenchError):
    return JSONResponse(
        status_code=constant.HTTP_STATUS.get(exc.exit_code, 400),
        content={**exc.to_dict(), "exitCode": exc.exit_code},
    )


@app.on_event("startup")
async def startup_event():
    logging.info({"action": "server_startup", "app": config.get("app_name"), "env": config.get("env")})


router = APIRouter(redirect_slashes=False)
router.include_router(algebra.router, tags=["Algebras and Structures"])
router.include_router(propositional.router, prefix="/propositional", tags=["Propositional C_omega"])
router.include_router(model.router, prefix="/model", tags=["Set-Theoretic Model"])
router.include_router(zf.router, prefix="/zf", tags=["ZFC_omega Axioms"])
app.include_router(router)
