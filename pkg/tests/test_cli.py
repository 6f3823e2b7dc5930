import json

import pytest
from click.testing import CliRunner

from factorlab.cli import cli
from factorlab.suite.utils import validate_report

MINI_CATALOG = """
mini:
  reference: beta with a wrong recorded expectation
  calculus:
    class: factorlab.engine.Calculus
    kwargs: {name: mini, rules: [beta], essential: head}
  corpus: {max_size: 3}
  checks:
    - name: shape
      fn: factorlab.calculi.suites.shape_suite
      expect: {shape-preservation: fail}
"""


@pytest.fixture
def runner():
    return CliRunner()


def test_list(runner):
    result = runner.invoke(cli, ['list'])
    assert result.exit_code == 0, result.output
    assert 'beta-eta' in result.output
    assert 'expected FAIL' in result.output
    result = runner.invoke(cli, ['list', '--format', 'json', 'beta-head'])
    assert result.exit_code == 0
    entries = json.loads(result.output)['catalog']
    assert [e['name'] for e in entries] == ['beta-head']
    assert entries[0]['rules'] == ['beta'] and entries[0]['essential'] == 'head'
    assert entries[0]['rule_docs'] == {'beta': '(λx.t)u -> t{x:=u}'}


def test_list_shows_rules_and_description(runner):
    result = runner.invoke(cli, ['list', 'shuffling'])
    assert result.exit_code == 0, result.output
    assert 'sigma rules move beta-v redexes' in result.output
    assert 'sigma3: v((λx.t)u) -> (λx.v t)u' in result.output


def test_list_unknown(runner):
    assert runner.invoke(cli, ['list', 'beta-omega']).exit_code == 64


def test_demo(runner, tmp_path):
    result = runner.invoke(cli, ['demo', 'head-factorize-example'])
    assert result.exit_code == 0, result.output
    assert '[ok]' in result.output and 'MISMATCH' not in result.output
    out = tmp_path / 'demo.json'
    result = runner.invoke(cli, ['demo', 'prob-lift', '--format', 'json', '--out', str(out)])
    assert result.exit_code == 0
    doc = json.loads(out.read_text())
    validate_report(doc)
    assert doc['ok'] and doc['results'][0]['name'] == 'prob-lift'


def test_demo_unknown(runner):
    assert runner.invoke(cli, ['demo', 'nope']).exit_code == 64


def test_check_usage_errors(runner):
    assert runner.invoke(cli, ['check', '--calculus', 'beta-omega']).exit_code == 64
    assert runner.invoke(cli, ['check', '--calculus', 'beta-head', '--suite', 'nope']).exit_code == 64
    assert runner.invoke(cli, ['check', '--format', 'xml']).exit_code == 64
    assert runner.invoke(cli, ['check', '--calculus', 'beta-head', 'bounds.path_bound=0']).exit_code == 64


def test_check_text(runner):
    result = runner.invoke(cli, ['check', '--calculus', 'beta-head', '--suite', 'shape', '--max-size', '4'])
    assert result.exit_code == 0, result.output
    assert 'all expectations met (exit 0)' in result.output


def test_check_json(runner, tmp_path):
    out = tmp_path / 'report.json'
    result = runner.invoke(cli, ['check', '--calculus', 'beta-head', '--suite', 'factorization', '--max-size', '4',
                                 '--seq-depth', '2', '--format', 'json', '--out', str(out)])
    assert result.exit_code == 0, result.output
    doc = json.loads(out.read_text())
    validate_report(doc)
    assert doc['command'] == 'check' and doc['ok'] and doc['exit_code'] == 0
    r, = doc['results']
    assert (r['calculus'], r['check'], r['met']) == ('beta-head', 'factorization', {'factorization': True})
    assert doc['config']['bounds']['seq_depth'] == 2
    assert 'beta-head/factorization' in doc['telemetry']['checks']


def test_check_essential_filter(runner, tmp_path):
    out = tmp_path / 'report.json'
    result = runner.invoke(cli, ['check', '--calculus', 'shuffling', '--suite', 'shape-weak', '--essential', 'weak',
                                 '--max-size', '4', '--format', 'json', '--out', str(out)])
    assert result.exit_code == 0, result.output
    assert [r['check'] for r in json.loads(out.read_text())['results']] == ['shape-weak']
    result = runner.invoke(cli, ['check', '--calculus', 'shuffling', '--suite', 'shape-weak', '--essential', 'head'])
    assert result.exit_code == 64


def test_check_mismatch(runner, tmp_path):
    path = tmp_path / 'catalog.yaml'
    path.write_text(MINI_CATALOG)
    result = runner.invoke(cli, ['check', f'run.catalog={path}'])
    assert result.exit_code == 1, result.output
    assert 'MISMATCH, expected fail' in result.output


def test_check_budget_from_env(runner, tmp_path):
    out = tmp_path / 'report.json'
    result = runner.invoke(cli, ['check', '--calculus', 'beta-head', '--suite', 'shape', '--max-size', '3',
                                 '--format', 'json', '--out', str(out)], env={'FACTORLAB_BUDGET': '1234'})
    assert result.exit_code == 0, result.output
    assert json.loads(out.read_text())['config']['bounds']['budget'] == 1234


def test_search_counterexample(runner, tmp_path):
    out = tmp_path / 'search.json'
    result = runner.invoke(cli, ['search-counterexample', '--left', 'beta', '--right', 'eta', '--path-bound', '3',
                                 '--format', 'json', '--out', str(out)])
    assert result.exit_code == 0, result.output
    doc = json.loads(out.read_text())
    validate_report(doc)
    assert not doc['ok']
    last = doc['results'][-1]
    assert last['size'] == 7 and last['failed'] > 0
    assert all(r['failed'] == 0 for r in doc['results'][:-1])
    peak = last['failures'][0]['peak']
    assert [s['rule'] for s in peak] == ['beta', 'eta']


def test_search_unknown_rule(runner):
    assert runner.invoke(cli, ['search-counterexample', '--left', 'beta', '--right', 'nope']).exit_code == 64
