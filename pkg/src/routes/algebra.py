from fastapi import APIRouter, Request, Response
from starlette.concurrency import run_in_threadpool

from src.controller import algebra
from src.decorator import api
from src.models.requests import StructureRequest
from src.utils import utils

router = APIRouter(redirect_slashes=False)


@router.post("/algebra/check")
@api("Check Algebra")
async def check_algebra(request: Request, response: Response, body: StructureRequest):
    exit_code, payload = await run_in_threadpool(algebra.check_algebra, body)
    return utils.respond(response, exit_code, payload)


@router.post("/structure/saturate")
@api("Saturate Structure")
async def saturate_structure(request: Request, response: Response, body: StructureRequest):
    exit_code, payload = await run_in_threadpool(algebra.saturate_structure, body)
    return utils.respond(response, exit_code, payload)


@router.post("/structure/check")
@api("Check Structure")
async def check_structure(request: Request, response: Response, body: StructureRequest):
    exit_code, payload = await run_in_threadpool(algebra.check_structure, body)
    return utils.respond(response, exit_code, payload)
