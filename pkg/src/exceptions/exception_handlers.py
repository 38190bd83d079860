"""Turn library exceptions into CLI exits."""

import sys

import orjson
import typer
from pydantic import ValidationError

from src.core.logger import logger
from src.exceptions import ConfigurationException, CreaSimException


def validation_error_to_exception(exc: ValidationError) -> ConfigurationException:
    """Convert a pydantic ValidationError into a ConfigurationException with a dotted key path."""
    first = exc.errors()[0]
    key_path = ".".join(str(part) for part in first["loc"])
    return ConfigurationException(first["msg"], key_path=key_path or "<root>")


def cli_exception_handler(exc: Exception) -> None:
    """Write a status/message record to stderr and exit with the exception's code."""
    if isinstance(exc, ValidationError):
        exc = validation_error_to_exception(exc)
    if isinstance(exc, CreaSimException):
        logger.debug("command failed", exc_info=exc)
        payload = {"status": exc.exit_code, "message": exc.detail}
        sys.stderr.write(orjson.dumps(payload).decode("utf-8") + "\n")
        raise typer.Exit(code=exc.exit_code)
    raise exc


