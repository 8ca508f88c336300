from datetime import datetime, timedelta
from enum import Enum
from pathlib import Path


def json_litera_encoder(obj):
    """
    A helper function to encode complex objects for JSON serialization.

    :param obj: the object to encode
    :return: a JSON friendly representation of the object
    """

    if isinstance(obj, datetime):
        return obj.isoformat()
    elif isinstance(obj, timedelta):
        return obj.total_seconds()
    elif isinstance(obj, Enum):
        return obj.value
    elif isinstance(obj, Path):
        return str(obj)
    else:
        raise TypeError(f"Object of type {type(obj).__name__} is not JSON serializable")
