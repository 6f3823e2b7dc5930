""" YAML configuration: catalog and definition files, run configs, and objects built from ``class`` blocks.
"""
import os
from functools import partial
from importlib import import_module
from typing import Any, Callable, Dict, Iterator, List, Optional, Tuple, Union

import yaml
from jinja2 import Template
from omegaconf import DictConfig, ListConfig, OmegaConf

YAML_SUFFIXES = ('.yml', '.yaml')

Node = Union[List, Dict]


def get_module(name: str) -> Any:
    """
    Object named by a dotted path, e.g. ``factorlab.engine.Calculus`` or ``factorlab.kernel.modular.head_test``.

    Raises:
        ImportError: If the module part does not import.
        AttributeError: If the module has no such attribute.
    """
    mod, _, attr = name.rpartition('.')
    return getattr(import_module(mod), attr)


def get_init_module(name: str, args: Optional[List] = None, kwargs: Optional[Dict] = None) -> Any:
    return get_module(name)(*(args or ()), **(kwargs or {}))


def _instantiate(block: Dict) -> Any:
    return get_init_module(block['class'], args=block.get('args'), kwargs=block.get('kwargs'))


def _walk(node: Node) -> Iterator[Tuple[Node, Any, Any]]:
    """``(container, key, value)`` for every nested value, children before their parent."""
    if isinstance(node, dict):
        items = list(node.items())
    elif isinstance(node, list):
        items = list(enumerate(node))
    else:
        raise ValueError(f'Expected a list or a dict, got {type(node)}')
    for k, v in items:
        if isinstance(v, (list, dict)):
            yield from _walk(v)
        yield node, k, v


def _render(text: str, hyperpar: Optional[Dict]) -> str:
    return Template(text).render(**hyperpar) if hyperpar else text


def _read(source, hyperpar: Optional[Dict]) -> Tuple[Any, str]:
    """Parsed document and the directory that relative includes resolve against."""
    if hasattr(source, 'read'):
        return yaml.load(_render(source.read(), hyperpar), Loader=yaml.FullLoader), ''
    with open(source) as f:
        text = f.read()
    return yaml.load(_render(text, hyperpar), Loader=yaml.FullLoader), os.path.dirname(source)


def load_yaml(config: Union[str, Node], hyperpar: Optional[Union[Dict, str]] = None) -> Node:
    """
    Load a YAML document, rendering ``{{ ... }}`` placeholders from ``hyperpar``.

    Any string value ending in ``.yml``/``.yaml`` is replaced by the document it names, looked up as given
    and then relative to the including file. This is how the catalog inlines one definition file per calculus.

    Args:
        config: A path, a file-like object, an OmegaConf node or an already loaded list/dict.
        hyperpar: Template values, or a path to a yaml file holding them.
    """
    if isinstance(hyperpar, str):
        hyperpar = load_yaml(hyperpar)
    if isinstance(config, (DictConfig, ListConfig)):
        config = OmegaConf.to_container(config, resolve=True)
    basedir = ''
    if isinstance(config, (list, dict)):
        for node, k, v in _walk(config):
            if hyperpar and isinstance(v, str) and '{{' in v:
                node[k] = _render(v, hyperpar)
    else:
        config, basedir = _read(config, hyperpar)
    if not isinstance(config, (list, dict)):
        return config
    for node, k, v in _walk(config):
        if isinstance(v, str) and v.endswith(YAML_SUFFIXES):
            path = v if os.path.isfile(v) else os.path.join(basedir, v)
            node[k] = load_yaml(path, hyperpar)
    return config


def build_module(config: Union[str, Node], hyperpar: Union[str, Dict, None] = None) -> Any:
    """
    Load ``config`` and replace every dict carrying a ``class`` key, innermost first, by the instance
    built from its ``args`` and ``kwargs``. A top-level ``class`` block returns the instance itself.
    """
    if isinstance(hyperpar, str):
        hyperpar = load_yaml(hyperpar)
    assert hyperpar is None or isinstance(hyperpar, dict), f'Template values must be a dict, got {type(hyperpar)}'
    config = load_yaml(config, hyperpar)
    for node, k, v in _walk(config):
        if isinstance(v, dict) and 'class' in v:
            node[k] = _instantiate(v)
    if isinstance(config, dict) and 'class' in config:
        return _instantiate(config)
    return config


def get_function(spec: Union[str, Dict]) -> Callable:
    """A callable from ``'module.fn'`` or ``{'fn': 'module.fn', 'kwargs': {...}}``, kwargs bound."""
    if isinstance(spec, str):
        return get_module(spec)
    return partial(get_module(spec['fn']), **spec.get('kwargs', {}))


def load_run_config(default: str, extra: Optional[List[str]] = None, args: Optional[List[str]] = None) -> DictConfig:
    """Default run config, merged with extra yaml files and ``key=value`` dotlist overrides."""
    cfg = OmegaConf.load(default)
    for path in extra or []:
        cfg = OmegaConf.merge(cfg, OmegaConf.load(path))
    if args:
        cfg = OmegaConf.merge(cfg, OmegaConf.from_dotlist(list(args)))
    return cfg
