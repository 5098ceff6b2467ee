# -*- coding: utf-8 -*-
import os
import yaml
import datetime
from fractions import Fraction

from .errors import ConfigError, ParseError


DEFAULTS_PATH = os.path.join(os.path.dirname(__file__), 'templates', 'defaults.yml')


def check_folder(path):
    """Create adequate folders if necessary."""
    if path and not os.path.isdir(path):
        check_folder(os.path.dirname(path))
        os.mkdir(path)

def read_yaml(yaml_path):
    """Open and read safely a yaml file.
    Raises ConfigError when the file is missing or malformed.
    """
    try:
        with open(yaml_path, 'r') as stream:
            parameters = yaml.safe_load(stream)
    except (OSError, yaml.YAMLError) as error:
        raise ConfigError("Couldn't load yaml file: {} ({}).".format(yaml_path, error))
    return parameters if parameters is not None else {}

def save_yaml(data, yaml_path):
    """Open and write safely in a yaml file.
    Arguments:
        - data: list/dict/str/int
        - yaml_path: str
    """
    check_folder(os.path.dirname(yaml_path))
    with open(yaml_path, 'w') as outfile:
        yaml.dump(data, outfile, default_flow_style=False)

def load_parameters(yaml_file=None, **overrides):
    """Effective parameters: packaged defaults, then a user yaml file,
    then explicit overrides that are not None.
    Arguments:
        - yaml_file: str or None
        - overrides: keyword values
    Returns:
        - parameters: dict
    """
    parameters = read_yaml(DEFAULTS_PATH)
    layers = [read_yaml(yaml_file)] if yaml_file else []
    layers.append({key: value for key, value in overrides.items() if value is not None})
    for layer in layers:
        if not isinstance(layer, dict):
            raise ConfigError('Parameter file must contain a mapping.')
        unknown = sorted(set(layer) - set(parameters))
        if unknown:
            raise ConfigError('Unknown parameters: {}.'.format(', '.join(unknown)))
        parameters.update(layer)
    return parameters

def write(path, text, end=''):
    """Write in the specified text file."""
    with open(path, 'a+') as f:
        f.write(text)
        f.write(end)

def get_timestamp(time_format="%d-%b-%Y (%H:%M:%S)"):
    """Return string timestamp.
    Returns:
        - string
    """
    return datetime.datetime.now(tz=None).strftime(time_format)

def parse_rational(token, line=None):
    """Read an exact rational written as an integer or as `p/q`.
    Decimal notation is refused so that nothing is rounded on input.
    Arguments:
        - token: str
        - line: int (for diagnostics)
    Returns:
        - Fraction
    """
    text = token.strip()
    parts = text.split('/')
    if len(parts) > 2 or not all(_is_integer(part) for part in parts):
        raise ParseError('malformed rational {!r}'.format(token), line)
    if len(parts) == 2 and int(parts[1]) == 0:
        raise ParseError('zero denominator in {!r}'.format(token), line)
    return Fraction(text)

def _is_integer(text):
    digits = text[1:] if text[:1] in '+-' else text
    return digits.isdigit()

def format_rational(value):
    """Render a Fraction as `p` or `p/q`."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return '{}/{}'.format(value.numerator, value.denominator)
