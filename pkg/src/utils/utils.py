import uuid
from datetime import datetime, timezone

from src.utils import constant


def create_response(
    status: str,
    message: str = None,
    error: str = None,
    resp=None,
) -> dict:
    response = {
        "status": status,
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "requestId": str(uuid.uuid4()),
    }

    if resp is not None:
        response["response"] = resp

    if error:
        response["error"] = error

    if message:
        response["message"] = message

    return response


def status_for(exit_code: int) -> str:
    if exit_code == constant.EXIT_VALID:
        return "success"
    if exit_code == constant.EXIT_COUNTEREXAMPLE:
        return constant.COUNTEREXAMPLE
    return "error"


def respond(response, exit_code: int, payload: dict) -> dict:
    """HTTP body for a controller result; the status code follows the exit code."""
    response.status_code = constant.HTTP_STATUS.get(exit_code, 400)
    status = status_for(exit_code)
    if status == "error":
        body = create_response(status=status, error=payload.get("error"), message=payload.get("message"), resp=payload)
    else:
        body = create_response(status=status, resp=payload)
    body["exitCode"] = exit_code
    return body
