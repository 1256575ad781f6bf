// Command-line front end over the sqzchain C API.
//
//   sqzchain <sweep|fit|spectrum|budget|infer> --config <file>
//            [--data <csv>] [--out <csv>] [--seed <u64>]

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "sqzchain/sqzchain.h"

namespace {

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int report(sqz_status status) {
    std::cerr << "sqzchain: error[" << sqz_status_name(status) << "]: " << sqz_last_error() << "\n";
    return sqz_status_exit_code(status);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Squeezed-light generation/detection chain modeling and fitting"};
    std::string command;
    std::string config_path;
    std::string data_path;
    std::string out_path;
    std::uint64_t seed = 0;
    app.add_option("command", command, "sweep, fit, spectrum, budget or infer")
        ->required()
        ->check(CLI::IsMember({"sweep", "fit", "spectrum", "budget", "infer"}));
    app.add_option("--config", config_path, "run configuration file")->required();
    app.add_option("--data", data_path, "input sweep CSV (fit)");
    app.add_option("--out", out_path, "write the CSV result here instead of standard output");
    app.add_option("--seed", seed, "seed for synthetic noise");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const auto config_text = read_file(config_path);
    if (!config_text) {
        std::cerr << "sqzchain: error[E_IO]: cannot read config file " << config_path << "\n";
        return 2;
    }
    std::optional<std::string> data_text;
    if (!data_path.empty()) {
        data_text = read_file(data_path);
        if (!data_text) {
            std::cerr << "sqzchain: error[E_IO]: cannot read data file " << data_path << "\n";
            return 3;
        }
    }

    sqz_config* config = nullptr;
    if (sqz_status status = sqz_config_parse(config_text->c_str(), &config); status != SQZ_OK) {
        return report(status);
    }
    sqz_result* result = nullptr;
    const sqz_status status =
        sqz_run(config, command.c_str(), data_text ? data_text->c_str() : nullptr, seed, &result);
    sqz_config_free(config);
    if (status != SQZ_OK) return report(status);

    const std::string csv = sqz_result_csv(result);
    const std::string summary = sqz_result_summary(result);
    sqz_result_free(result);

    const bool table_command = command == "sweep" || command == "fit" || command == "spectrum";
    if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::binary);
        out << csv;
        if (!out) {
            std::cerr << "sqzchain: error[E_IO]: cannot write " << out_path << "\n";
            return 3;
        }
        std::cout << summary;
    } else if (table_command) {
        std::cout << csv;
        std::cerr << summary;
    } else {
        std::cout << summary;
    }
    return 0;
}
