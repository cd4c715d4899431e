// Copyright contributors to the emuq project
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

//! Wall-clock measurement: monotonic clock, one warm-up run discarded,
//! median of the remaining repetitions.

use std::time::Instant;

/// Runs `f` once unrecorded, then `reps` timed repetitions, and returns
/// the median in seconds (upper median for even counts).
pub fn median_seconds<F: FnMut()>(reps: usize, mut f: F) -> f64 {
    f();
    let reps = reps.max(1);
    let mut times: Vec<f64> = (0..reps)
        .map(|_| {
            let t0 = Instant::now();
            f();
            t0.elapsed().as_secs_f64()
        })
        .collect();
    times.sort_by(f64::total_cmp);
    times[times.len() / 2]
}
