import logging

from rich.console import Console
from rich.logging import RichHandler

from src.core.config import settings

# Configure logging; stdout stays reserved for command output
logging.basicConfig(
    level=settings.log_level,
    format="%(name)s - %(message)s",
    handlers=[RichHandler(console=Console(stderr=True), show_path=False)],
)
logger = logging.getLogger("creasim")


def set_verbosity(quiet: bool) -> None:
    """Raise the root level to ERROR when the CLI runs with --quiet."""
    if quiet:
        logging.getLogger().setLevel(logging.ERROR)
