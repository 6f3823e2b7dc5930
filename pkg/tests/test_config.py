import pytest

from factorlab.config import build_module, get_function, get_module, load_run_config, load_yaml
from factorlab.engine import Calculus
from factorlab.terms import ContextClass


def test_get_module():
    assert get_module('factorlab.engine.Calculus') is Calculus
    with pytest.raises(AttributeError):
        get_module('factorlab.engine.Nope')


def test_load_yaml_includes_and_templates(tmp_path):
    (tmp_path / 'defs').mkdir()
    (tmp_path / 'defs' / 'b.yaml').write_text('name: b\nmax_size: {{ size }}\n')
    (tmp_path / 'catalog.yaml').write_text('b: defs/b.yaml\nnote: plain\n')
    doc = load_yaml(str(tmp_path / 'catalog.yaml'), dict(size=5))
    assert doc == dict(b=dict(name='b', max_size=5), note='plain')
    assert load_yaml(dict(x='{{ size }}'), dict(size=3)) == dict(x='3')


def test_build_module():
    cal = build_module({'class': 'factorlab.engine.Calculus',
                        'kwargs': dict(name='bv', rules=['betav'], essential='weak')})
    assert isinstance(cal, Calculus) and cal.essential is ContextClass.WEAK
    nested = build_module(dict(entry=dict(calculus={'class': 'factorlab.engine.Calculus',
                                                    'kwargs': dict(name='b', rules=['beta'])})))
    assert nested['entry']['calculus'].name == 'b'


def test_get_function():
    fn = get_function(dict(fn='factorlab.engine.Calculus', kwargs=dict(rules=['beta'])))
    assert fn(name='b').rule_names == ('beta',)
    assert get_function('factorlab.config.load_yaml') is load_yaml


def test_load_run_config(tmp_path):
    default = tmp_path / 'default.yaml'
    default.write_text('bounds:\n  seq_depth: 4\n  path_bound: 6\n')
    extra = tmp_path / 'extra.yaml'
    extra.write_text('bounds:\n  path_bound: 3\n')
    cfg = load_run_config(str(default), [str(extra)], ['bounds.seq_depth=2'])
    assert (cfg.bounds.seq_depth, cfg.bounds.path_bound) == (2, 3)
