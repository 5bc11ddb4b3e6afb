"""
Django settings for the paraconsistent algebra project.

The project has no web surface; Django provides the settings layer, the
management commands in the ``storage`` app and the test runner.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/6.0/ref/settings/
"""

import os
from pathlib import Path

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.environ.get('SECRET_KEY', 'django-insecure-paraconsistent-algebra-local-key')

DEBUG = os.environ.get('DEBUG', 'False').lower() == 'true'

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'rest_framework',
    'relations',
    'algebra',
    'querylang',
    'storage',
    'difftest',
]

# Database
# None: relations live in text database files and the tests need no database.
# https://docs.djangoproject.com/en/6.0/ref/settings/#databases

DATABASES = {}


# Internationalization
# https://docs.djangoproject.com/en/6.0/topics/i18n/

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True


# REST Framework (serializers and the JSON renderer only)
REST_FRAMEWORK = {
    'UNAUTHENTICATED_USER': None,
    'UNICODE_JSON': True,
    'COMPACT_JSON': False,
    'STRICT_JSON': True,
}


# Algebra engine

# Upper bound on objects generated by a single operator step (choice sets,
# tuple-space enumeration, extensions, lifted operator images).
GDPR_MAX_WORLDS = int(os.environ.get('GDPR_MAX_WORLDS', '1000000'))

# Defaults for the fuzz command.
GDPR_FUZZ_SEED = int(os.environ.get('GDPR_FUZZ_SEED', '42'))
GDPR_FUZZ_TRIALS = int(os.environ.get('GDPR_FUZZ_TRIALS', '200'))

GDPR_LOG_LEVEL = os.environ.get('GDPR_LOG_LEVEL', 'WARNING').upper()


# Logging
# Results go to stdout from the management commands; everything logged here
# goes to stderr.
LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'plain': {
            'format': '%(levelname)s %(name)s: %(message)s',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'plain',
        },
    },
    'loggers': {
        app: {
            'handlers': ['console'],
            'level': GDPR_LOG_LEVEL,
            'propagate': False,
        }
        for app in ('relations', 'algebra', 'querylang', 'storage', 'difftest')
    },
}
