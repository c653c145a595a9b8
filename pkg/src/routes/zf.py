from fastapi import APIRouter, Request, Response
from starlette.concurrency import run_in_threadpool

from src.controller import zf
from src.decorator import api
from src.models.requests import ZfRequest
from src.utils import utils

router = APIRouter(redirect_slashes=False)


@router.post("/check")
@api("Set-Theoretic Axioms")
async def check_zf(request: Request, response: Response, body: ZfRequest):
    exit_code, payload = await run_in_threadpool(zf.check_zf, body)
    return utils.respond(response, exit_code, payload)
