# Copyright 2026 The m2pn Authors
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
"""Menger 2-probabilistic normed spaces."""

from ._core import (
    DimensionMismatch,
    DistributionFn,
    DocumentError,
    PreconditionViolation,
    classify,
    classify_df,
    converges_to,
    epsilon,
    equal,
    leq,
    nu,
    pointwise_min,
    radius,
    run_document,
    two_norm,
    validate_document,
)

__all__ = [
    "DimensionMismatch",
    "DistributionFn",
    "DocumentError",
    "PreconditionViolation",
    "classify",
    "classify_df",
    "converges_to",
    "epsilon",
    "equal",
    "leq",
    "nu",
    "pointwise_min",
    "radius",
    "run_document",
    "two_norm",
    "validate_document",
]
