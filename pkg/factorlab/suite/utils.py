import json
import logging
import os
import tempfile
from typing import Any, Dict, List, Optional, Sequence

import click
import jsonschema
from omegaconf import DictConfig, OmegaConf

from factorlab.config import load_run_config, load_yaml
from factorlab.kernel.ars import Bounds

_default_config = os.path.join(os.path.dirname(__file__), 'default_run.yaml')
_report_schema = os.path.join(os.path.dirname(__file__), '..', 'report_schema.yaml')


class ConfigError(click.UsageError):
    """Bad configuration or selection on the command line."""
    exit_code = 64


def load_config(config: Sequence[str] = (), args: Sequence[str] = (), **flags) -> DictConfig:
    """Default run config merged with extra yaml files, dot-list ``args`` and explicit flags.

    ``flags`` map dotted config keys to values; ``None`` values are skipped.
    """
    logging.info(f'Using default run configuration: {_default_config}')
    for cfg in config:
        logging.info(f'Using additional configuration: {cfg}')
    if args:
        logging.info('Overriding configuration:')
        for arg in args:
            logging.info(arg)
    try:
        cfg = load_run_config(_default_config, list(config), list(args))
        for k, v in flags.items():
            if v is not None:
                OmegaConf.update(cfg, k, v)
        text = OmegaConf.to_yaml(cfg, resolve=True)
    except Exception as e:
        raise ConfigError(f'Bad configuration: {e}') from e
    logging.info('--- START run.yaml ---')
    logging.info(text)
    logging.info('--- END run.yaml ---')
    return cfg


def get_bounds(cfg: DictConfig) -> Bounds:
    try:
        return Bounds(**OmegaConf.to_container(cfg.bounds, resolve=True))
    except (AssertionError, TypeError, ValueError) as e:
        raise ConfigError(f'Bad bounds: {e}') from e


def corpus_overrides(cfg: DictConfig) -> Dict[str, Any]:
    return {k: v for k, v in OmegaConf.to_container(cfg.corpus, resolve=True).items() if v is not None}


def validate_report(doc: Dict[str, Any]):
    jsonschema.validate(instance=doc, schema=load_yaml(_report_schema))


def to_json(doc: Dict[str, Any]) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + '\n'


def atomic_write(path: str, text: str):
    """Write ``text`` to a temporary file next to ``path``, then rename it over ``path``."""
    dirname = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=dirname, prefix='.' + os.path.basename(path), suffix='.tmp')
    try:
        with os.fdopen(fd, 'w') as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise


def emit(doc: Dict[str, Any], lines: List[str], fmt: str = 'text', out: Optional[str] = None):
    """Validate ``doc`` and write it as JSON, or write the text ``lines``; to ``out`` or stdout."""
    if fmt not in ('text', 'json'):
        raise ConfigError(f'Unknown output format {fmt!r}, expected text or json')
    validate_report(doc)
    text = to_json(doc) if fmt == 'json' else '\n'.join(lines) + '\n'
    if out is None:
        click.echo(text, nl=False)
    else:
        atomic_write(out, text)
        logging.info(f'Report written to {out}')
