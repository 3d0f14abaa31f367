#!/usr/bin/env python3
# Copyright 2026 The measqc Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Regenerates include/measqc/default_data.hpp from the files in data/.

Run after editing any file under data/; test_quantity_parser checks that the
embedded copies and the data files agree.
"""

import pathlib

ROOT = pathlib.Path(__file__).resolve().parent.parent
FILES = [
    ("kUnitLexicon", "data/units.tsv"),
    ("kScopePatterns", "data/scope_patterns.tsv"),
    ("kAugTemplate", "data/templates/p_aug.txt"),
    ("kTraceTemplate", "data/templates/p_trace.txt"),
]

HEADER = """// Copyright 2026 The measqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Generated by tools/embed_data.py from data/. Do not edit.

#pragma once

#include <string_view>

namespace measqc::data {
"""


def main():
    out = [HEADER]
    for name, rel in FILES:
        body = (ROOT / rel).read_text(encoding="utf-8")
        assert ")MEASQC\"" not in body
        out.append(f"\n// {rel}\ninline constexpr std::string_view {name} = R\"MEASQC({body})MEASQC\";\n")
    out.append("\n}  // namespace measqc::data\n")
    (ROOT / "include/measqc/default_data.hpp").write_text("".join(out), encoding="utf-8")


if __name__ == "__main__":
    main()
