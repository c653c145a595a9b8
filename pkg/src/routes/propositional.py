from fastapi import APIRouter, Request, Response
from starlette.concurrency import run_in_threadpool

from src.controller import propositional
from src.decorator import api
from src.models.requests import PropAxiomsRequest, StructureRequest
from src.utils import utils

router = APIRouter(redirect_slashes=False)


@router.post("/axioms")
@api("Propositional Axioms")
async def prop_axioms(request: Request, response: Response, body: PropAxiomsRequest):
    exit_code, payload = await run_in_threadpool(propositional.prop_axioms, body)
    return utils.respond(response, exit_code, payload)


@router.post("/paraconsistent")
@api("Paraconsistency Witness")
async def paraconsistent(request: Request, response: Response, body: StructureRequest):
    exit_code, payload = await run_in_threadpool(propositional.paraconsistent, body)
    return utils.respond(response, exit_code, payload)
