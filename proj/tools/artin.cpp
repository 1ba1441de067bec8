#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

#include "artin/cli.hpp"

namespace {

const char* describe(artin::Command c) {
  switch (c) {
    case artin::Command::period:
      return "Repetend of 1/p in a base";
    case artin::Command::reptend:
      return "Primes up to x with the base as primitive root";
    case artin::Command::census:
      return "Count primes with primitive root u against delta(u) li(x)";
    case artin::Command::density:
      return "Predicted density delta(u) and its kernel decomposition";
    case artin::Command::totient_sums:
      return "Sums of phi(p-1)/(p-1) and phi(p-1)/p against A li(x)";
    case artin::Command::expsum:
      return "Exponential sums over primitive roots and their bounds";
    case artin::Command::verify_lemma1:
      return "Character-sum indicator of primitive roots versus the order test";
    case artin::Command::verify_lemma33:
      return "Mobius-weighted root-of-unity sums: identity and bound";
    case artin::Command::wieferich:
      return "Primes with u^(p-1) = 1 mod p^2";
  }
  return "";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Primes with a fixed primitive root: periods, densities, censuses and exponential sums"};
  app.require_subcommand(1);

  artin::RunConfig cfg;
  cfg.threads = artin::default_threads();
  std::string format = "table";
  std::string output;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format: csv, json or table")
        ->check(CLI::IsMember({"csv", "json", "table"}));
    sub->add_option("--seed", cfg.seed, "Seed for sampled spot checks");
    sub->add_option("--threads", cfg.threads, "Worker threads (default: $ARTIN_THREADS or hardware)");
    sub->add_option("-o,--output", output, "Write the report to a file instead of stdout");
  };

  for (const auto& [name, cmd] : artin::command_names()) {
    auto* sub = app.add_subcommand(name, describe(cmd));
    add_common(sub);
    sub->add_option("--base,-u", cfg.base, "Base u (or digit base for period/reptend)");
    sub->add_option("--limit,-x", cfg.limit, "Upper limit x (per-command default and cap)");
    sub->add_option("--trunc,-P", cfg.truncation, "Truncation point of the infinite products");
    switch (cmd) {
      case artin::Command::period:
        sub->add_option("--p", cfg.p, "Prime denominator")->required();
        sub->add_flag("--force-digits", cfg.force_digits, "Extract digits even for very long periods");
        break;
      case artin::Command::census:
        sub->add_flag("--short-interval", cfg.short_interval, "Count primes in [x, 2x] instead of [2, x]");
        sub->add_flag("--classical", cfg.classical, "Use the classical (1 - 1/(p-1)) factor for p | k");
        break;
      case artin::Command::density:
        sub->add_flag("--classical", cfg.classical, "Use the classical (1 - 1/(p-1)) factor for p | k");
        sub->add_flag("--allow-square", cfg.allow_square, "Accept perfect-square bases (diagnostics)");
        break;
      case artin::Command::expsum:
        sub->add_option("--p", cfg.p, "Single prime to analyse; omit to sweep primes 10..limit");
        sub->add_option("--s", cfg.s, "Multiplier s for the single sample");
        break;
      default:
        break;
    }
    sub->callback([&cfg, cmd = cmd] { cfg.command = cmd; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return artin::kExitUsage;
  }
  cfg.format = *artin::parse_format(format);

  if (output.empty()) return artin::run(cfg, std::cout, std::cerr);
  std::ofstream file(output, std::ios::binary);
  if (!file) {
    std::cerr << "cannot open " << output << '\n';
    return artin::kExitUsage;
  }
  return artin::run(cfg, file, std::cerr);
}
