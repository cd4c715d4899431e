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

//! emuq: run quantum circuits by exact gate-level simulation or by
//! high-level classical emulation, and measure the difference.

mod app;
mod bench;
mod crossover;
mod formats;
mod model;
mod qpe_cmd;
mod run;
mod timing;
mod workloads;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "emuq",
    version,
    about = "Quantum circuit simulation and high-level classical emulation",
    after_help = "Exit codes: 0 success, 1 comparison failure, 2 usage/parse error, 3 resource failure."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a workload: simulate gate-by-gate, emulate, or compare both.
    Run(run::RunArgs),
    /// Benchmark a suite across sizes and write timing CSV.
    Bench(bench::BenchArgs),
    /// Estimate an eigenphase with a chosen or auto-selected strategy.
    Qpe(qpe_cmd::QpeArgs),
    /// Tabulate the precision at which emulation overtakes simulation.
    Crossover(crossover::CrossoverArgs),
    /// Evaluate the analytic Fourier-transform time models.
    Model(model::ModelArgs),
}

fn main() {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run(args) => run::cmd_run(args),
        Command::Bench(args) => bench::cmd_bench(args),
        Command::Qpe(args) => qpe_cmd::cmd_qpe(args),
        Command::Crossover(args) => crossover::cmd_crossover(args),
        Command::Model(args) => model::cmd_model(args),
    };
    if let Err(e) = result {
        eprintln!("{e}");
        std::process::exit(e.exit_code());
    }
}
