import asyncio
import logging
import time
from typing import Callable, Dict


async def run_check(label: str, job: Callable):
    try:
        return {"label": label, "status": "success", "data": await asyncio.to_thread(job)}
    except Exception as e:
        return {"label": label, "status": "error", "error": e}


async def call_checks_parallel(jobs: Dict[str, Callable]) -> Dict:
    start = time.time()
    tasks = [run_check(label=label, job=job) for label, job in jobs.items()]
    responses = await asyncio.gather(*tasks)

    # Merge responses, keeping the submission order
    merged_response = {"success": {}, "failed": {}, "execution_time": 0}
    for response in responses:
        if response["status"] == "error":
            merged_response["failed"][response["label"]] = response["error"]
        else:
            merged_response["success"][response["label"]] = response["data"]
    merged_response["execution_time"] = round(time.time() - start, 3)

    logging.info(
        {
            "event": "checks_merged",
            "success": list(merged_response["success"]),
            "failed": list(merged_response["failed"]),
            "execution_time": merged_response["execution_time"],
        }
    )
    return merged_response


def run_checks_parallel(jobs: Dict[str, Callable]) -> Dict:
    """Run independent checks on worker threads and merge their results by label."""
    return asyncio.run(call_checks_parallel(jobs))
