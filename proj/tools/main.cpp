#include "commands.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace koszul;

namespace {

std::vector<Method> parse_methods(const std::string& s) {
  std::vector<Method> out;
  std::stringstream in(s);
  for (std::string m; std::getline(in, m, ',');) {
    if (m == "homology") out.push_back(Method::Homology);
    else if (m == "dist") out.push_back(Method::Distributivity);
    else if (m == "koszul") out.push_back(Method::KoszulComplex);
    else throw CLI::ValidationError("--methods", "unknown method '" + m + "'");
  }
  if (out.empty()) throw CLI::ValidationError("--methods", "no method given");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Koszulity checks for quadratic algebras, coalgebras and their morphisms"};
  cli::Options opt;
  std::string input = "-", out_path, window = "4,4", methods, field;
  std::uint64_t seed = 0;

  app.add_option("command", opt.command, "Command to run")
      ->required()
      ->check(CLI::IsMember(cli::command_names()));
  app.add_option("input", input, "Input file in the stanza format, '-' for stdin");
  app.add_option("--window", window, "Window I,J (homological, internal)");
  app.add_option("--budget", opt.budget, "Term budget for bar and cobar complexes");
  app.add_option("--methods", methods, "Comma list of homology, dist, koszul");
  app.add_option("--field", field, "Default field: a prime, or Q");
  app.add_option("--out", out_path, "Write the JSON report here instead of stdout");
  auto* seed_opt = app.add_option("--seed", seed, "Seed, recorded in the report");
  app.add_flag("--timings", opt.timings, "Record wall-clock timings (breaks byte-identical reports)");
  try {
    app.parse(argc, argv);
    const auto comma = window.find(',');
    if (comma == std::string::npos) {
      opt.i_max = opt.j_max = std::stoi(window);
    } else {
      opt.i_max = std::stoi(window.substr(0, comma));
      opt.j_max = std::stoi(window.substr(comma + 1));
    }
    if (!methods.empty()) opt.methods = parse_methods(methods);
    if (!field.empty()) {
      if (field == "Q" || field == "0") {
        opt.field = Field::rationals();
      } else {
        const auto p = std::stoul(field);
        if (!is_prime(p)) throw CLI::ValidationError("--field", field + " is not prime");
        opt.field = Field::prime(static_cast<std::uint32_t>(p));
      }
    }
    if (*seed_opt) opt.seed = seed;
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : cli::kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kBadInput;
  }

  std::string text;
  if (input == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream in(input, std::ios::binary);
    if (!in) {
      std::cerr << "error: cannot read " << input << "\n";
      return cli::kBadInput;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }

  const cli::Outcome out = cli::run_command(opt, text);
  const std::string rendered = cli::render(out.report);
  if (out_path.empty()) {
    std::cout << rendered;
  } else {
    std::ofstream f(out_path, std::ios::binary);
    f << rendered;
    if (!f) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return cli::kBadInput;
    }
  }
  if (out.report.contains("error")) std::cerr << out.report["error"].get<std::string>() << "\n";
  return out.exit_code;
}
