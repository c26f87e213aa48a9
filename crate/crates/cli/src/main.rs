// Copyright 2026 The optqrc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! `optqrc`: command-line harness for the reservoir studies.

mod commands;
mod config;
mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{data, ising, majorization, pauli_map, qrc};

const CONFIG_HELP: &str = "\
Every option can also be set in a config file passed with --config: one
`key = value` per line, keys are the long flag names without the leading
dashes (e.g. `seeds = 50`), `#` starts a comment. Flags on the command line
override the file, which overrides the defaults.

Exit codes: 0 success, 2 configuration error, 3 runtime failure (outputs
written so far are kept, and run.json records status `partial`).";

#[derive(Parser, Debug)]
#[command(name = "optqrc", version, about = "Quantum reservoir computing with random circuit families", after_help = CONFIG_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Test MSE of reservoir families on a ground-state dataset.
    Qrc(qrc::QrcArgs),
    /// Cumulant fluctuations of circuit ensembles and the Haar baseline.
    Majorization(majorization::MajorizationArgs),
    /// Two-qubit ensembles in the Pauli basis with a PCA map.
    PauliMap(pauli_map::PauliMapArgs),
    /// Random Ising parameters, gate counts and Trotter error.
    Ising(ising::IsingArgs),
    /// Build or inspect dataset archives.
    #[command(subcommand)]
    Data(data::DataCommand),
}

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Runtime(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Runtime(m) => write!(f, "error: {m}"),
        }
    }
}

impl From<optqrc::Error> for CliError {
    fn from(e: optqrc::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Qrc(a) => qrc::run(a),
        Command::Majorization(a) => majorization::run(a),
        Command::PauliMap(a) => pauli_map::run(a),
        Command::Ising(a) => ising::run(a),
        Command::Data(c) => data::run(c),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            match e {
                CliError::Config(_) => ExitCode::from(2),
                CliError::Runtime(_) => ExitCode::from(3),
            }
        }
    }
}
