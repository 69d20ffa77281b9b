import copy
import os
from dataclasses import dataclass

import yaml

from elars.errors import ConfigError

FUEL_ENV = 'ELARS_FUEL'

conf = {
    'fuel': 10000,
    'gated_fuel': 1000000,
    'require_gate': True,
    'prune_auxiliary': True,
    'window': 6,
    'log_level': 'WARNING',
    'belts': {
        'belts': 100,
        'horizon': 100,
        'p1': 0.3,
        'p2': 0.3,
        'p3': 0.5,
        'seed': 42,
    },
}


@dataclass(frozen=True)
class Settings:
    fuel: int
    gated_fuel: int
    require_gate: bool
    prune_auxiliary: bool
    window: int
    log_level: str
    belts: dict


def _merge(base, override, path=''):
    for key, value in override.items():
        if key not in base:
            raise ConfigError('unknown setting %r' % (path + key))
        if isinstance(base[key], dict):
            if not isinstance(value, dict):
                raise ConfigError('setting %r must be a mapping' % (path + key))
            _merge(base[key], value, path + key + '.')
        else:
            base[key] = value


def load_settings(path=None, environ=None):
    """Build the effective settings.

    Defaults from ``conf`` are overridden by the YAML file at ``path`` (if any)
    and then by ``ELARS_FUEL`` in ``environ``.
    """
    environ = os.environ if environ is None else environ
    values = copy.deepcopy(conf)

    if path is not None:
        try:
            with open(path, encoding='utf-8') as handle:
                loaded = yaml.safe_load(handle)
        except (OSError, UnicodeDecodeError, yaml.YAMLError) as exc:
            raise ConfigError('cannot read settings %s: %s' % (path, exc)) from exc
        if loaded is not None:
            if not isinstance(loaded, dict):
                raise ConfigError('settings file %s must hold a mapping' % path)
            _merge(values, loaded)

    fuel = environ.get(FUEL_ENV)
    if fuel:
        try:
            values['fuel'] = int(fuel)
        except ValueError:
            raise ConfigError('%s must be an integer, got %r' % (FUEL_ENV, fuel))
    if values['fuel'] <= 0 or values['gated_fuel'] <= 0:
        raise ConfigError('fuel settings must be positive')

    return Settings(**values)
