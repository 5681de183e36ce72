import json

import pytest

from ..cli import (main, EXIT_OK, EXIT_CHECK_FAILED, EXIT_BAD_INPUT,
                   EXIT_SIZE_LIMIT)
from ..graph import circulant, double_cover


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def test_analyze_cyclic(capsys):
    code, report = run_json(capsys, 'analyze', '--n', '15',
                            '--set', '1,4,11,14')
    assert code == EXIT_OK
    assert report['group'] == '15'
    assert report['connectionSet'] == [1, 4, 11, 14]
    assert report['verdict']['status'] == 'stable'
    assert report['arcTransitive'] is True
    assert report['normalCayley'] is True
    assert report['compatibility']['compatible'] is True
    assert report['conditions']['any'] is False


def test_analyze_product_group(capsys):
    code, report = run_json(capsys, 'analyze', '--group', '4x4', '--set',
                            '(2,2),(0,2),(1,3),(3,1),(0,1),(0,3)')
    assert code == EXIT_OK
    assert report['vertices'] == 16
    assert report['verdict']['status'] == 'nontrivially_unstable'
    assert report['arcTransitive'] is True
    assert report['compatibility']['compatible'] is True
    assert 'conditions' not in report


def test_analyze_without_compat(capsys):
    code, report = run_json(capsys, 'analyze', '--n', '5', '--set', '1,4',
                            '--compat', 'off')
    assert code == EXIT_OK
    assert report['compatibility'] is None


def test_conditions(capsys):
    code, report = run_json(capsys, 'conditions', '--n', '12',
                            '--set', '3,4,8,9')
    assert code == EXIT_OK
    assert report['c2']['holds'] is True
    assert report['c2']['b'] == 3
    assert report['c2prime']['holds'] is False


def test_compat(capsys):
    code, report = run_json(capsys, 'compat', '--n', '3', '--set', '1,2')
    assert code == EXIT_OK
    assert report['compatible'] is False
    code, report = run_json(capsys, 'compat', '--n', '4', '--set', '1,3',
                            '--method', 'matrix')
    assert report['compatible'] is True
    assert report['method'] == 'matrix_search'


def test_skeleton(capsys, tmp_path):
    code, report = run_json(capsys, 'skeleton', '--n', '8', '--set', '1,4,7')
    assert code == EXIT_OK
    assert report['booleanSquare']['connectionSet'] == [2, 3, 5, 6]
    assert report['skeleton']['connectionSet'] == [3, 5]
    assert len(report['dispensable']) == 8

    out = tmp_path / 'skeleton.dot'
    code, text = run(capsys, 'skeleton', '--n', '8', '--set', '1,4,7',
                     '--emit', 'dot', '--out', str(out))
    assert text == ''
    dot = out.read_text()
    assert 'graph BS {' in dot and 'graph Sk {' in dot


def test_dcover(capsys):
    code, text = run(capsys, 'dcover', '--n', '3', '--set', '1,2',
                     '--emit', 'dot')
    assert code == EXIT_OK
    assert text == double_cover(circulant(3, [1, 2])).to_dot()

    code, report = run_json(capsys, 'dcover', '--n', '15', '--set',
                            '1,4,11,14', '--as-circulant')
    assert report == {'n': 30, 'connectionSet': [1, 11, 19, 29]}

    code, _ = run(capsys, 'dcover', '--n', '4', '--set', '1,3',
                  '--as-circulant')
    assert code == EXIT_BAD_INPUT


def test_family(capsys):
    code, report = run_json(capsys, 'family', 'thm3', '--l', '3', '--m', '5')
    assert code == EXIT_OK
    assert report['t'] == 11
    assert report['passed'] is True
    code, reports = run_json(capsys, 'family', 'thm3', '--max-order', '21')
    assert [(r['l'], r['m']) for r in reports] == [(3, 5), (3, 7)]
    code, _ = run(capsys, 'family', 'thm3', '--l', '3', '--m', '9')
    assert code == EXIT_BAD_INPUT


@pytest.mark.parametrize('argv', [
    ('conditions', '--n', '12', '--set', '0,1,11'),
    ('conditions', '--n', '12', '--set', '1,2'),
    ('analyze', '--group', '4x0', '--set', '1'),
    ('survey', '--max-n', '6', '--require', 'c5'),
])
def test_bad_input(capsys, argv):
    code, out = run(capsys, *argv)
    assert code == EXIT_BAD_INPUT
    assert out == ''


def test_size_limit(capsys):
    code, _ = run(capsys, '--max-vertices', '10', 'analyze', '--n', '12',
                  '--set', '1,11')
    assert code == EXIT_SIZE_LIMIT


def test_survey(capsys):
    code, report = run_json(capsys, 'survey', '--min-n', '12', '--max-n',
                            '12', '--require', 'c2=3', '--no-compat')
    assert code == EXIT_OK
    assert report['total'] == 31
    assert report['byStatus'].get('stable', 0) == 9


def test_survey_unwritable_output(capsys, tmp_path):
    out = str(tmp_path / 'missing' / 'survey.jsonl')
    code, report = run_json(capsys, 'survey', '--max-n', '5', '--no-compat',
                            '--out', out)
    assert code == EXIT_CHECK_FAILED
    assert report['total'] == 0


def test_survey_resume_with_other_range(capsys, tmp_path):
    out = str(tmp_path / 'survey.jsonl')
    code, _ = run_json(capsys, 'survey', '--max-n', '5', '--no-compat',
                       '--out', out)
    assert code == EXIT_OK
    code, report = run_json(capsys, 'survey', '--max-n', '6', '--no-compat',
                            '--out', out, '--resume')
    assert code == EXIT_CHECK_FAILED
    assert report['total'] == 0
    code, report = run_json(capsys, 'survey', '--max-n', '6', '--no-compat',
                            '--out', out, '--resume', '--force')
    assert code == EXIT_OK
    assert report['total'] == 15


@pytest.mark.parametrize('argv', [
    ('compat', '--group', '2x4', '--set', '(0,1),(0,3)'),
    ('compat', '--group', '2x4', '--set', '(0,1),(0,3)', '--method',
     'matrix'),
    ('skeleton', '--group', '2x2', '--set', '(0,1),(1,0),(1,1)'),
])
def test_product_group_commands(capsys, argv):
    code, report = run_json(capsys, *argv)
    assert code == EXIT_OK
    assert report
