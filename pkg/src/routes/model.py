from fastapi import APIRouter, Request, Response
from starlette.concurrency import run_in_threadpool

from src.controller import model
from src.decorator import api
from src.models.requests import EvalRequest, LeibnizRequest, LemmasRequest, UniverseRequest
from src.utils import utils

router = APIRouter(redirect_slashes=False)


@router.post("/universe")
@api("Universe Statistics")
async def universe(request: Request, response: Response, body: UniverseRequest):
    exit_code, payload = await run_in_threadpool(model.universe, body)
    return utils.respond(response, exit_code, payload)


@router.post("/eval")
@api("Evaluate Formula")
async def evaluate(request: Request, response: Response, body: EvalRequest):
    exit_code, payload = await run_in_threadpool(model.evaluate, body)
    return utils.respond(response, exit_code, payload)


@router.post("/leibniz")
@api("Leibniz Law")
async def leibniz(request: Request, response: Response, body: LeibnizRequest):
    exit_code, payload = await run_in_threadpool(model.leibniz, body)
    return utils.respond(response, exit_code, payload)


@router.post("/lemmas")
@api("Identity Lemmas")
async def lemmas(request: Request, response: Response, body: LemmasRequest):
    exit_code, payload = await run_in_threadpool(model.lemmas, body)
    return utils.respond(response, exit_code, payload)
