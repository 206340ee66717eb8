import ast
import glob
import os

import pytest

import expo_tools


def _modules():
    return sorted(glob.glob(os.path.join(os.path.dirname(expo_tools.__file__), '*.py')))


def _parse(filename):
    with open(filename, encoding='utf-8') as f:
        return ast.parse(f.read(), filename)


@pytest.mark.parametrize('filename', _modules(), ids=os.path.basename)
def test_print_function_import_is_used(filename):
    nodes = list(ast.walk(_parse(filename)))
    imported = any(isinstance(n, ast.ImportFrom) and n.module == '__future__'
                   and any(a.name == 'print_function' for a in n.names) for n in nodes)
    printing = any(isinstance(n, ast.Call) and isinstance(n.func, ast.Name) and n.func.id == 'print'
                   for n in nodes)
    assert printing or not imported
