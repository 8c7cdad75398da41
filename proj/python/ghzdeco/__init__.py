# Copyright 2026 The ghzdeco Authors
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

"""GHZ-state decoherence experiments on superconducting coupling graphs."""

from ._core import (  # noqa: F401
    CouplingGraph,
    DecayFit,
    Error,
    NoiseModel,
    ParityDataset,
    ParityPoint,
    QubitChain,
    QubitNoise,
    RatioPoint,
    ScalingFit,
    SinusoidFit,
    T2Value,
    analysis_rotation,
    analyze,
    find_chain,
    fit_decay,
    fit_parity,
    fit_parity_arrays,
    fit_scaling,
    ghz_coherence,
    ghz_qasm,
    ibmqx5,
    load_graph,
    make_chain,
    parity_scan,
    phi_grid,
    predict_t2n_from_calibration,
    propagate_ratios,
    qasm_round_trip,
    reference_chain,
    reference_t2_table,
    reproduce_paper,
    route,
    simulate,
    u3_matrix,
)

__version__ = "0.1.0"
