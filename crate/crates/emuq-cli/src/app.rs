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

//! Process-level error handling: every failure is classified into one of
//! the documented exit codes.

use std::fmt;

/// Exit codes: 0 success, 1 comparison failure, 2 usage/parse error,
/// 3 resource failure.
#[derive(Debug)]
pub enum AppError {
    /// Bad flags, malformed files, violated operation preconditions.
    Usage(String),
    /// A compare run found paths diverging beyond tolerance.
    Comparison(String),
    /// Allocation failures and size-ceiling refusals.
    Resource(String),
}

impl AppError {
    pub fn exit_code(&self) -> i32 {
        match self {
            AppError::Comparison(_) => 1,
            AppError::Usage(_) => 2,
            AppError::Resource(_) => 3,
        }
    }
}

impl fmt::Display for AppError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AppError::Usage(m) => write!(f, "error: {m}"),
            AppError::Comparison(m) => write!(f, "comparison failed: {m}"),
            AppError::Resource(m) => write!(f, "resource error: {m}"),
        }
    }
}

impl std::error::Error for AppError {}

pub fn usage(message: impl Into<String>) -> AppError {
    AppError::Usage(message.into())
}

pub fn resource(message: impl Into<String>) -> AppError {
    AppError::Resource(message.into())
}

impl From<emuq_core::Error> for AppError {
    fn from(e: emuq_core::Error) -> Self {
        use emuq_core::Error::*;
        match e {
            AllocationFailed { .. } | InvalidQubitCount { .. } | DenseLimitExceeded { .. } => {
                AppError::Resource(e.to_string())
            }
            _ => AppError::Usage(e.to_string()),
        }
    }
}

/// Parses an inclusive size range: `4..10`, `4..=10`, or a single `7`.
pub fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let parse_one = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| format!("bad size '{t}' in range '{s}'"))
    };
    if let Some((lo, hi)) = s.split_once("..") {
        let hi = hi.strip_prefix('=').unwrap_or(hi);
        let (lo, hi) = (parse_one(lo)?, parse_one(hi)?);
        if lo > hi {
            return Err(format!("empty range '{s}'"));
        }
        Ok((lo, hi))
    } else {
        let v = parse_one(s)?;
        Ok((v, v))
    }
}
