import uuid

from fastapi import Request
from starlette.middleware.base import BaseHTTPMiddleware


class RequestIDMiddleware(BaseHTTPMiddleware):
    """Echoes the logging context's uuid, so a response can be matched to its log lines."""

    async def dispatch(self, request: Request, call_next):
        response = await call_next(request)
        context = getattr(request.state, "context", None)
        response.headers["X-Request-ID"] = context["uuid"] if context else str(uuid.uuid4())
        return response
