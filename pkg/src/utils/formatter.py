from starlette.requests import Request


def trim(item, depth=0, max_depth=100, max_length=1000):
    if depth > max_depth:
        return "..."

    if isinstance(item, (float, int, bool)) or item is None:
        return item
    elif isinstance(item, dict):
        return {str(k): trim(v, depth + 1, max_depth, max_length) for k, v in item.items()}
    elif isinstance(item, (list, tuple, set, frozenset)):
        return [trim(elem, depth + 1, max_depth, max_length) for elem in item]
    elif isinstance(item, str):
        return (item[:max_length] + "...") if len(item) > max_length else item
    else:
        return trim(str(item), depth + 1, max_depth, max_length)


async def get_request_body(request: Request) -> dict:
    content_type = request.headers.get("content-type")
    if content_type is None or not content_type.startswith("application/json"):
        return None
    return await request.json()
