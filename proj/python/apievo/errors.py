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


"""Exception raised by every apievo operation."""

import json


class ApiEvoError(Exception):
    """A failure reported by the native core.

    ``code`` and ``path`` describe the first problem; ``diagnostics`` lists
    all of them as dictionaries with severity, code, path and message.
    """

    def __init__(self, message, code, path, diagnostics_json="[]"):
        super().__init__(message)
        self.code = code
        self.path = path
        self.diagnostics = json.loads(diagnostics_json)
