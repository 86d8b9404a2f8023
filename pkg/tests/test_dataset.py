import logging
import math
from pathlib import Path
import numpy as np
import pytest
from glm_limits.base import DatasetError, MissingColumn, NonNumericCell, EmptyAfterFiltering
from glm_limits.dataset import DatasetSpec, NaPolicy, load_csv, parse_cell

DATA = Path(__file__).parents[1] / 'src' / 'glm_limits' / 'data'


def write(tmp_path, text: str) -> str:
    path = tmp_path / 'data.csv'
    path.write_text(text, encoding='utf-8')
    return str(path)


def test_three_rows(tmp_path):
    path = write(tmp_path, 'Confirmed,Lat,Long_\n10,32.3,-86.9\n20,61.3,-152.4\n30,34.0,-111.0\n')
    design = load_csv(DatasetSpec(path, 'Confirmed', ['Long_', 'Lat']))
    assert (design.p, design.n) == (3, 3)
    assert design.names == ['intercept', 'Long_', 'Lat']
    assert list(design.Z[0]) == [1.0, 1.0, 1.0]
    assert list(design.Z[2]) == [32.3, 61.3, 34.0]
    assert list(design.y) == [10.0, 20.0, 30.0]
    assert design.dropped_rows == 0


def test_bom_and_padding(tmp_path):
    path = tmp_path / 'bom.csv'
    path.write_bytes('﻿ y , x \n 1 , 2 \n3,4\n'.encode('utf-8'))
    design = load_csv(DatasetSpec(str(path), 'y', ['x'], add_intercept=False))
    assert list(design.Z[0]) == [2.0, 4.0]


def test_non_numeric_cell(tmp_path):
    path = write(tmp_path, 'Confirmed,Lat\n1,2.0\n2,abc\n')
    with pytest.raises(NonNumericCell) as e:
        load_csv(DatasetSpec(path, 'Confirmed', ['Lat']))
    assert (e.value.row, e.value.column) == (2, 'Lat')
    with pytest.raises(NonNumericCell):
        load_csv(DatasetSpec(path, 'Confirmed', ['Lat'], na_policy=NaPolicy.FAIL))


def test_missing_values(tmp_path, caplog):
    path = write(tmp_path, 'y,x\n1,0.5\n2,\n3,NA\n4,1.5\n')
    with caplog.at_level(logging.INFO):
        design = load_csv(DatasetSpec(path, 'y', ['x']))
    assert design.n == 2
    assert design.dropped_rows == 2
    assert 'Dropped 2 rows' in caplog.text
    with pytest.raises(DatasetError, match='row 2'):
        load_csv(DatasetSpec(path, 'y', ['x'], na_policy='fail'))


def test_missing_column(tmp_path):
    path = write(tmp_path, 'y,x\n1,2\n')
    with pytest.raises(MissingColumn) as e:
        load_csv(DatasetSpec(path, 'y', ['z']))
    assert e.value.column == 'z'
    assert path in str(e.value)


def test_empty_after_filtering(tmp_path):
    with pytest.raises(EmptyAfterFiltering):
        load_csv(DatasetSpec(write(tmp_path, 'y,x\n1,\n,2\n'), 'y', ['x']))
    with pytest.raises(EmptyAfterFiltering):
        load_csv(DatasetSpec(write(tmp_path, 'y,x\n'), 'y', ['x']))
    with pytest.raises(EmptyAfterFiltering):
        load_csv(DatasetSpec(write(tmp_path, 'y,x\n1,2\n'), 'y', ['x']))


def test_spec_validation():
    with pytest.raises(DatasetError):
        DatasetSpec('a.csv', 'y', ['y'])
    with pytest.raises(DatasetError):
        DatasetSpec('a.csv', 'y', ['x', 'x'])
    with pytest.raises(DatasetError):
        DatasetSpec('a.csv', 'y', [], add_intercept=False)
    with pytest.raises(ValueError):
        DatasetSpec('a.csv', 'y', ['x'], na_policy='ignore')


def test_parse_cell():
    assert parse_cell('1e3', 1, 'x') == 1000.0
    assert math.isnan(parse_cell('null', 1, 'x'))
    assert math.isnan(parse_cell('NaN', 1, 'x'))
    with pytest.raises(NonNumericCell):
        parse_cell('inf', 1, 'x')


def test_bundled_covid_file():
    design = load_csv(DatasetSpec(str(DATA / 'covid_us.csv'), 'Confirmed', ['Long_', 'Lat']))
    assert design.n == 56
    assert design.dropped_rows == 2
    assert np.all(design.y >= 0)


def test_malformed_csv(tmp_path):
    path = write(tmp_path, 'y,x\n1,2\n2,' + '7' * 200000 + '\n')
    with pytest.raises(DatasetError, match='Malformed CSV'):
        load_csv(DatasetSpec(path, 'y', ['x']))
