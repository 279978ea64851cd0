# Copyright 2026 The apievo Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.


"""Continuous evolution of APIs with multiple concurrently supported revisions."""

import json

from . import _apievo
from .errors import ApiEvoError

__all__ = [
    "ApiEvoError",
    "Registry",
    "canonical_text",
    "convert",
    "decode",
    "diff",
    "encode",
    "internal_rep",
    "resolve",
    "sha256_hex",
    "validate",
]


def validate(text):
    """Diagnostics for a definition; an empty list means it is well formed."""
    return json.loads(_apievo.validate(text))


def canonical_text(text):
    return _apievo.canonical_text(text)


def diff(revisions, from_revision, to_revision):
    """Classified changes between two revisions of a history given as texts."""
    return json.loads(_apievo.diff(list(revisions), from_revision, to_revision))


def internal_rep(revisions, supported=None):
    return _apievo.internal_rep(list(revisions), supported)


def resolve(revisions, client, revision, supported=None):
    return _apievo.resolve(list(revisions), client, revision, supported)


def convert(revisions, client, revision, type_name, direction, payload,
            supported=None, fallbacks=None):
    """Converts a binary payload between a client and the provider.

    Requests go from the client schema to the internal representation,
    responses the other way.
    """
    return _apievo.convert(list(revisions), client, revision, type_name, direction,
                           bytes(payload), supported, dict(fallbacks or {}))


def encode(definition, type_name, value, direction="req"):
    return _apievo.encode(definition, type_name, json.dumps(value), direction)


def decode(definition, type_name, payload, direction="req"):
    return json.loads(_apievo.decode(definition, type_name, bytes(payload), direction))


def sha256_hex(data):
    return _apievo.sha256_hex(data)


class Registry:
    """File-backed store of revision histories and client registrations."""

    def __init__(self, root):
        self._native = _apievo.Registry(str(root))

    def publish(self, api, text):
        return json.loads(self._native.publish(api, text))

    def register_client(self, api, name, text, revision):
        self._native.register_client(api, name, text, revision)

    def set_supported(self, api, revisions, force=False):
        return json.loads(self._native.set_supported(api, list(revisions), force))

    def status(self, api):
        return json.loads(self._native.status(api))

    def apis(self):
        return self._native.apis()

    def internal_rep(self, api):
        return self._native.internal_rep(api)
