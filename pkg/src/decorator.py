import logging
import time
import uuid
from functools import wraps

from fastapi import Request, Response

from src.lib.errors import WorkbenchError
from src.utils import constant
from src.utils.formatter import get_request_body


def api(description=""):
    def decorator(func):
        @wraps(func)
        async def wrapper(request: Request, response: Response, *args, **kwargs):
            context = request.state.context
            context["description"] = description

            content_type = request.headers.get("content-type")
            request_body = await get_request_body(request)
            logging.info(
                {
                    **context,
                    "event": "API Request received",
                    "content": content_type,
                    "request_body": request_body,
                }
            )

            resp = None
            try:
                resp = await func(request, response, *args, **kwargs)
            except Exception:
                logging.exception({**context, "event": "Processing Error"})

            if resp is None:
                logging.info({**context, "event": "API Request completed", "response_body": None})
                response.status_code = 500
                return {"message": "Internal Server Error"}

            logging.info(
                {
                    **context,
                    "event": "API Request completed",
                    "status_code": response.status_code,
                }
            )
            return resp

        return wrapper

    return decorator


def command(name=""):
    """CLI counterpart of `api`: a context dict and received/completed events around one subcommand."""

    def decorator(func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            context = {"uuid": str(uuid.uuid4()), "command": name, "start_timestamp": time.time()}
            logging.info({**context, "event": "Command received"})
            exit_code = None
            try:
                exit_code = func(*args, **kwargs)
                return exit_code
            except Exception as e:
                # typer.Exit carries the code of a finished command.
                exit_code = getattr(e, "exit_code", constant.EXIT_USAGE)
                raise
            finally:
                logging.info({**context, "event": "Command completed", "exit_code": exit_code})

        return wrapper

    return decorator


def guarded(func):
    """Controllers return (exit_code, payload); library errors become their exit code and error dict."""

    @wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except WorkbenchError as e:
            logging.exception({"event": "Processing Error", "controller": func.__name__, "error": type(e).__name__})
            return e.exit_code, e.to_dict()
        except Exception as e:
            logging.exception({"event": "Processing Error", "controller": func.__name__})
            return constant.EXIT_USAGE, {"error": type(e).__name__, "message": constant.PROCESSING_ERROR}

    return wrapper
