import os
import sys
import unittest
from unittest.mock import patch

import pytest
import yaml

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from utils import ConfigManager, coerce_setting


@pytest.fixture(autouse=True)
def fresh_config(monkeypatch):
    for variable in ('INVSEQ_LAB_WORKERS', 'INVSEQ_LAB_EXPECTED_VALUES'):
        monkeypatch.delenv(variable, raising=False)
    ConfigManager.reset()
    with patch('utils.load_dotenv'):
        yield
    ConfigManager.reset()


def write_config(tmp_path, config):
    path = tmp_path / 'config.yaml'
    path.write_text(yaml.safe_dump(config), encoding='utf-8')
    return str(path)


def test_defaults_come_from_schema(tmp_path):
    """Without a user file every value is the schema default."""
    ConfigManager.initialize(config_path=str(tmp_path / 'missing.yaml'))
    assert ConfigManager.is_initialized()
    assert ConfigManager.get_config_value('enumeration', 'max_length') == 14
    assert ConfigManager.get_config_value('enumeration', 'workers') == 1
    assert ConfigManager.get_config_value('series', 'default_order') == 24
    assert ConfigManager.get_config_value('data', 'expected_values_path') is None
    assert ConfigManager.get_config_value('series', 'nope') is None
    assert ConfigManager.get_config_section('nope') == {}
    assert set(ConfigManager.get_schema()) == {'enumeration', 'series', 'data', 'misc'}


def test_user_config_is_merged(tmp_path):
    path = write_config(tmp_path, {'enumeration': {'workers': 3}})
    ConfigManager.initialize(config_path=path)
    section = ConfigManager.get_config_section('enumeration')
    assert section['workers'] == 3
    assert section['max_length'] == 14


def test_environment_overrides(tmp_path, monkeypatch):
    monkeypatch.setenv('INVSEQ_LAB_WORKERS', '4')
    monkeypatch.setenv('INVSEQ_LAB_EXPECTED_VALUES', '/tmp/expected.csv')
    ConfigManager.initialize(config_path=str(tmp_path / 'missing.yaml'))
    assert ConfigManager.get_config_value('enumeration', 'workers') == 4
    assert ConfigManager.get_config_value('data', 'expected_values_path') == '/tmp/expected.csv'


def test_bad_environment_value_is_ignored(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv('INVSEQ_LAB_WORKERS', 'many')
    ConfigManager.initialize(config_path=str(tmp_path / 'missing.yaml'))
    assert ConfigManager.get_config_value('enumeration', 'workers') == 1
    assert 'Ignoring INVSEQ_LAB_WORKERS' in capsys.readouterr().out


def test_uninitialized_access():
    with pytest.raises(RuntimeError):
        ConfigManager.get_config_value('enumeration', 'workers')
    with pytest.raises(RuntimeError):
        ConfigManager.set_config_value(2, 'enumeration', 'workers')
    assert ConfigManager.get_verbose_mode() is False


def test_console_print_respects_verbose_mode(tmp_path, capsys):
    ConfigManager.console_print('library message')
    assert capsys.readouterr().out == ''

    ConfigManager.initialize(config_path=str(tmp_path / 'missing.yaml'))
    ConfigManager.console_print('plain')
    ConfigManager.console_print('detail', verbose=True)
    assert capsys.readouterr().out == 'plain\n'

    ConfigManager.set_verbose_mode(True)
    assert ConfigManager.get_verbose_mode()
    ConfigManager.console_print('detail', verbose=True)
    assert capsys.readouterr().out == 'detail\n'


def test_log_to_file(tmp_path, capsys):
    log_path = tmp_path / 'lab.log'
    path = write_config(tmp_path, {'misc': {'log_to_file': True, 'print_to_terminal': False,
                                            'log_file_path': str(log_path)}})
    ConfigManager.initialize(config_path=path)
    ConfigManager.console_print('counted 4082')
    assert capsys.readouterr().out == ''
    ConfigManager.reset()
    text = log_path.read_text(encoding='utf-8')
    assert 'invseq-lab logging started' in text
    assert 'INFO - counted 4082' in text


def test_set_and_save_config(tmp_path):
    ConfigManager.initialize(config_path=str(tmp_path / 'missing.yaml'))
    ConfigManager.set_config_value(6, 'enumeration', 'prefix_length')
    ConfigManager.set_config_value('x', 'extra', 'nested', 'key')
    assert ConfigManager.get_config_value('extra', 'nested', 'key') == 'x'
    target = tmp_path / 'saved.yaml'
    ConfigManager.save_config(str(target))
    saved = yaml.safe_load(target.read_text(encoding='utf-8'))
    assert saved['enumeration']['prefix_length'] == 6
    assert saved['extra'] == {'nested': {'key': 'x'}}


def test_user_value_of_wrong_type_keeps_default(tmp_path, capsys):
    path = write_config(tmp_path, {'enumeration': {'workers': 'three', 'show_progress': True},
                                   'series': {'default_order': True}})
    ConfigManager.initialize(config_path=path)
    assert ConfigManager.get_config_value('enumeration', 'workers') == 1
    assert ConfigManager.get_config_value('enumeration', 'show_progress') is True
    assert ConfigManager.get_config_value('series', 'default_order') == 24
    out = capsys.readouterr().out
    assert "Ignoring enumeration.workers='three'" in out
    assert 'Ignoring series.default_order=True' in out


def test_coerce_setting():
    schema = ConfigManager.load_config_schema()
    assert coerce_setting(schema['enumeration']['workers'], '6') == 6
    assert coerce_setting(schema['enumeration']['show_progress'], 'false') is False
    assert coerce_setting(schema['data']['expected_values_path'], None) is None
    with pytest.raises(ValueError):
        coerce_setting(schema['enumeration']['show_progress'], 'sometimes')
    with pytest.raises(ValueError):
        coerce_setting(schema['enumeration']['workers'], 2.5)


def test_reload_config_rereads_file(tmp_path):
    path = write_config(tmp_path, {'series': {'residual_order': 10}})
    ConfigManager.initialize(config_path=path)
    assert ConfigManager.config_file_exists()
    ConfigManager.set_config_value(3, 'series', 'residual_order')
    ConfigManager.reload_config()
    assert ConfigManager.get_config_value('series', 'residual_order') == 10


class TestConfigSchema(unittest.TestCase):
    """Schema entries and the defaults derived from them."""

    TYPES = {'int': int, 'bool': bool, 'str': str}

    def setUp(self):
        ConfigManager.reset()
        self.schema = ConfigManager.load_config_schema()

    def tearDown(self):
        ConfigManager.reset()

    def test_every_setting_is_described(self):
        """Each setting carries a value, a known type and a description."""
        for category, settings in self.schema.items():
            for name, entry in settings.items():
                with self.subTest(setting=f"{category}.{name}"):
                    self.assertEqual(set(entry), {'value', 'type', 'description'})
                    self.assertIn(entry['type'], self.TYPES)
                    if entry['value'] is not None:
                        self.assertIsInstance(entry['value'], self.TYPES[entry['type']])

    def test_defaults_mirror_schema_values(self):
        """load_default_config strips the metadata and keeps the values."""
        with patch('utils.load_dotenv'), patch.dict(os.environ, {}, clear=False):
            os.environ.pop('INVSEQ_LAB_WORKERS', None)
            os.environ.pop('INVSEQ_LAB_EXPECTED_VALUES', None)
            ConfigManager.initialize(config_path=os.devnull)
        for category, settings in self.schema.items():
            for name, entry in settings.items():
                self.assertEqual(ConfigManager.get_config_value(category, name), entry['value'])
