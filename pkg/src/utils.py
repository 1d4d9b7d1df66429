import os
import logging

import yaml
from dotenv import load_dotenv

LOGGER_NAME = 'invseqlab'
SRC_DIR = os.path.dirname(os.path.abspath(__file__))
SCHEMA_PATH = os.path.join(SRC_DIR, 'config_schema.yaml')
USER_CONFIG_PATH = os.path.join(SRC_DIR, 'config.yaml')
DEFAULT_LOG_PATH = os.path.join(os.path.expanduser('~'), '.invseq-lab', 'logs', 'invseq-lab.log')
LOG_FORMAT = '%(asctime)s - %(levelname)s - %(message)s'

# Environment variable -> (category, setting)
ENV_OVERRIDES = {
    'INVSEQ_LAB_WORKERS': ('enumeration', 'workers'),
    'INVSEQ_LAB_EXPECTED_VALUES': ('data', 'expected_values_path'),
}

SCHEMA_TYPES = {'int': int, 'bool': bool, 'str': str}


def coerce_setting(entry, raw):
    """Convert an override to the type declared by its schema entry.

    Strings from the environment are parsed; YAML values must already have the
    declared type. Raises ValueError otherwise.
    """
    expected = SCHEMA_TYPES[entry['type']]
    if raw is None and entry['value'] is None:
        return None
    if isinstance(raw, str) and expected is not str:
        if expected is bool:
            if raw.lower() not in ('true', 'false', '1', '0'):
                raise ValueError(raw)
            return raw.lower() in ('true', '1')
        return expected(raw)
    # bool is an int subclass
    if isinstance(raw, bool) and expected is not bool:
        raise ValueError(raw)
    if not isinstance(raw, expected):
        raise ValueError(raw)
    return raw


class ConfigManager:
    """Process-wide settings for the CLI.

    Library modules take explicit arguments and never read this class; only
    main.py initializes it and passes values down.
    """
    _instance = None
    _schema = None
    _logger = None
    _file_handler = None

    def __init__(self, schema):
        self.schema = schema
        self.config = self.load_default_config()
        self.config_path = None

    @classmethod
    def initialize(cls, schema_path=None, config_path=None):
        if cls._instance is not None:
            return
        cls._instance = cls(cls.load_config_schema(schema_path))
        cls._instance.load_user_config(USER_CONFIG_PATH if config_path is None else config_path)
        cls.load_env_variables()
        cls._setup_logging()

    @classmethod
    def is_initialized(cls):
        return cls._instance is not None

    @classmethod
    def reset(cls):
        """Forget the instance and close the log file; main() runs several times per test process."""
        if cls._logger and cls._file_handler:
            cls._logger.removeHandler(cls._file_handler)
            cls._file_handler.close()
        cls._instance = None
        cls._file_handler = None
        cls._logger = None

    @classmethod
    def _require_instance(cls):
        if cls._instance is None:
            raise RuntimeError("ConfigManager not initialized")
        return cls._instance

    @classmethod
    def get_schema(cls):
        if not cls._schema:
            cls._schema = cls.load_config_schema()
        return cls._schema

    @staticmethod
    def load_config_schema(schema_path=None):
        with open(schema_path or SCHEMA_PATH, 'r', encoding='utf-8') as file:
            return yaml.safe_load(file)

    @classmethod
    def _lookup(cls, keys, missing):
        node = cls._require_instance().config
        for key in keys:
            if not isinstance(node, dict) or key not in node:
                return missing
            node = node[key]
        return node

    @classmethod
    def get_config_section(cls, *keys):
        return cls._lookup(keys, {})

    @classmethod
    def get_config_value(cls, *keys):
        return cls._lookup(keys, None)

    @classmethod
    def set_config_value(cls, value, *keys):
        """Set a nested value, creating intermediate sections as needed."""
        node = cls._require_instance().config
        for key in keys[:-1]:
            if not isinstance(node.get(key), dict):
                node[key] = {}
            node = node[key]
        node[keys[-1]] = value

    def load_default_config(self):
        """Strip the type and description metadata from the schema."""
        return {
            category: {name: entry['value'] for name, entry in settings.items()}
            for category, settings in self.schema.items()
        }

    def load_user_config(self, config_path=USER_CONFIG_PATH):
        """Merge a user YAML file over the defaults.

        Settings known to the schema are type-checked; a value of the wrong type
        is reported and the default kept. Unknown keys are merged as given.
        """
        self.config_path = config_path
        if not config_path or not os.path.isfile(config_path):
            return
        try:
            with open(config_path, 'r', encoding='utf-8') as file:
                user_config = yaml.safe_load(file) or {}
        except yaml.YAMLError as e:
            print(f"Error in {config_path}: {e}. Using default configuration.")
            return

        for category, settings in user_config.items():
            known = self.schema.get(category)
            if not isinstance(settings, dict) or known is None:
                self.config[category] = settings
                continue
            for name, value in settings.items():
                if name not in known:
                    self.config[category][name] = value
                    continue
                try:
                    self.config[category][name] = coerce_setting(known[name], value)
                except ValueError:
                    print(f"Ignoring {category}.{name}={value!r} in {config_path}: "
                          f"expected {known[name]['type']}")

    @classmethod
    def save_config(cls, config_path=USER_CONFIG_PATH):
        instance = cls._require_instance()
        with open(config_path, 'w', encoding='utf-8') as file:
            yaml.safe_dump(instance.config, file, default_flow_style=False)
        instance.config_path = config_path
        cls._setup_logging()

    @classmethod
    def reload_config(cls):
        """Rebuild defaults and re-read the last user file and the environment."""
        instance = cls._require_instance()
        instance.config = instance.load_default_config()
        instance.load_user_config(instance.config_path)
        cls.load_env_variables()

    @classmethod
    def config_file_exists(cls):
        path = cls._instance.config_path if cls._instance else USER_CONFIG_PATH
        return bool(path) and os.path.isfile(path)

    @classmethod
    def load_env_variables(cls):
        """Apply INVSEQ_LAB_* overrides, reading .env first."""
        load_dotenv()
        schema = cls._instance.schema
        for variable, (category, name) in ENV_OVERRIDES.items():
            raw = os.environ.get(variable)
            if not raw:
                continue
            entry = schema[category][name]
            try:
                cls.set_config_value(coerce_setting(entry, raw), category, name)
            except ValueError:
                print(f"Ignoring {variable}={raw!r}: expected {entry['type']}")

    @classmethod
    def console_print(cls, message, verbose=False):
        """Single sink for status messages: terminal and/or log file, per the misc settings."""
        if cls._instance is None:
            logging.getLogger(LOGGER_NAME).debug(message)
            return

        misc = cls._instance.config.get('misc', {})
        if verbose and not misc.get('verbose_mode', False):
            return
        if misc.get('print_to_terminal', True):
            print(message)
        if misc.get('log_to_file', False) and cls._logger:
            cls._logger.info(message)

    @classmethod
    def _setup_logging(cls):
        if cls._instance is None:
            return
        misc = cls._instance.config.get('misc', {})
        if not misc.get('log_to_file', False):
            return

        cls._logger = logging.getLogger(LOGGER_NAME)
        cls._logger.setLevel(logging.INFO)
        for handler in cls._logger.handlers[:]:
            cls._logger.removeHandler(handler)

        log_file_path = misc.get('log_file_path') or DEFAULT_LOG_PATH
        os.makedirs(os.path.dirname(os.path.abspath(log_file_path)), exist_ok=True)

        cls._file_handler = logging.FileHandler(log_file_path, encoding='utf-8')
        cls._file_handler.setLevel(logging.INFO)
        cls._file_handler.setFormatter(logging.Formatter(LOG_FORMAT))
        cls._logger.addHandler(cls._file_handler)
        cls._logger.info("invseq-lab logging started")

    @classmethod
    def set_verbose_mode(cls, verbose):
        """Turn verbose messages on for this session; also routes module timings to stderr."""
        if cls._instance is None:
            return
        cls._instance.config['misc']['verbose_mode'] = verbose
        if verbose:
            logging.basicConfig(level=logging.DEBUG, format='%(name)s: %(message)s')

    @classmethod
    def get_verbose_mode(cls):
        if cls._instance is None:
            return False
        return cls._instance.config.get('misc', {}).get('verbose_mode', False)
