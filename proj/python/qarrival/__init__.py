# Copyright 2026 The qarrival Authors
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

"""Arrival-time statistics for absorptive quantum dynamics."""

from ._core import (  # noqa: F401
    AbsorptiveSystem,
    QarrivalError,
    __version__,
    absorption_probability,
    airy,
    airy_negative_zeros,
    asymptotic_operator,
    constant_absorber,
    constants,
    density,
    dilation_trajectory,
    energy_stats,
    evolve,
    fit_minimal,
    gap_lemma_check,
    ion_effective,
    minimal_density,
    moment,
    oscillator_spectrum,
    propagator,
    quantum_jump_sample,
    random_system,
    survival,
    two_level,
    uncertainty_report,
    wall_linear_spectrum,
)
