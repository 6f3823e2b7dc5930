import click

from factorlab.suite.check import check
from factorlab.suite.demo import demo
from factorlab.suite.listing import listing
from factorlab.suite.search import search
from factorlab.suite.utils import ConfigError


class FactorlabGroup(click.Group):
    """Usage errors of any sub-command exit with status 64."""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except click.UsageError as e:
            e.exit_code = ConfigError.exit_code
            raise


@click.group(cls=FactorlabGroup)
def cli():
    """factorlab: bounded checks of factorization properties of lambda-calculus extensions
    """


cli.add_command(listing, name='list')
cli.add_command(check, name='check')
cli.add_command(demo, name='demo')
cli.add_command(search, name='search-counterexample')


if __name__ == '__main__':
    import logging
    logging.basicConfig(level=logging.INFO)
    cli()
