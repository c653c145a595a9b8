from .log import LoggingMiddleware
from .request_uuid import RequestIDMiddleware
