"""creasim command-line entry point."""

from typing import Annotated

import typer

from src.cli.routes import router as cli_routes
from src.core.config import settings
from src.core.logger import set_verbosity

app = typer.Typer(name=settings.PROJECT_NAME, help=settings.PROJECT_DESCRIPTION, no_args_is_help=True)


@app.callback()
def main(
    ctx: typer.Context,
    quiet: Annotated[bool, typer.Option("--quiet", help="Errors only; no summaries on stdout")] = False,
):
    set_verbosity(quiet)
    ctx.obj = {"quiet": quiet}


app.registered_commands.extend(cli_routes.registered_commands)


if __name__ == "__main__":
    app()
