from pathlib import Path

import pytest

from elars.syntax import parse_program, parse_stream

DATA = Path(__file__).resolve().parent.parent / 'data'


def read_program(name):
    return parse_program((DATA / name).read_text())


def read_stream(name):
    return parse_stream((DATA / name).read_text())


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def belt_program():
    return read_program('belt.lars')


@pytest.fixture
def belt_stream():
    return read_stream('belt.lstream')


@pytest.fixture
def chain():
    return read_program('chain.lars')


@pytest.fixture
def relay():
    return read_program('relay.lars')
