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

//! `emuq model`: evaluate the analytic Fourier-transform time models for
//! a machine description, tabulating predicted times and speedups.

use std::path::PathBuf;

use clap::Args;
use emuq_core::costmodel::{modelled_qft_speedup, t_fft_parts, t_qft_parts, MachineParams};

use crate::app::{resource, usage, AppError};
use crate::formats::parse_machine_params;

#[derive(Args, Debug)]
pub struct ModelArgs {
    /// Qubit sizes to tabulate, `LO..HI` inclusive.
    #[arg(long, value_parser = crate::app::parse_range)]
    pub n_range: (usize, usize),

    /// Machine parameters file (`key = value`: flops_peak, eff_fft,
    /// b_mem, b_net, p). Defaults describe a 2016-era cluster node.
    #[arg(long)]
    pub machine: Option<PathBuf>,

    /// Write the model CSV here instead of stdout.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

pub fn cmd_model(args: &ModelArgs) -> Result<(), AppError> {
    let params = match &args.machine {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| resource(format!("cannot read {}: {e}", path.display())))?;
            parse_machine_params(&text).map_err(|e| usage(e.to_string()))?
        }
        None => MachineParams::default(),
    };

    let (lo, hi) = args.n_range;
    let mut out =
        String::from("n,t_fft_s,t_qft_s,time_ratio,modelled_speedup,comm_ratio\n");
    for n in lo..=hi {
        let fft = t_fft_parts(n, &params);
        let qft = t_qft_parts(n, &params);
        let comm_ratio = if fft.communication > 0.0 {
            qft.communication / fft.communication
        } else {
            0.0
        };
        out.push_str(&format!(
            "{n},{:.6e},{:.6e},{:.4},{:.4},{:.4}\n",
            fft.total(),
            qft.total(),
            qft.total() / fft.total(),
            modelled_qft_speedup(n, &params),
            comm_ratio,
        ));
    }
    match &args.csv {
        Some(path) => {
            std::fs::write(path, out)
                .map_err(|e| resource(format!("cannot write {}: {e}", path.display())))?;
            println!("model csv: {}", path.display());
        }
        None => print!("{out}"),
    }
    Ok(())
}
