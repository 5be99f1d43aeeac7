#pragma once

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <apdfilter/apdfilter.hpp>

namespace apd::cli {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write '" + path + "'");
  f << text;
}

/// `STRING` or `@file`; a file contributes one string per non-blank line.
inline std::vector<Word> read_inputs(const std::string& arg, const Alphabet& alphabet) {
  std::vector<Word> out;
  if (!arg.empty() && arg.front() == '@') {
    std::istringstream in(read_file(arg.substr(1)));
    std::string line;
    while (std::getline(in, line))
      if (line.find_first_not_of(" \t\r") != std::string::npos) out.push_back(alphabet.encode(line));
  } else {
    out.push_back(alphabet.encode(arg));
  }
  return out;
}

inline OptimizeOptions optimize_options(std::ostream& err) {
  OptimizeOptions opts;
  if (const char* cap = std::getenv("APDFILTER_MAX_OPTIMIZE_PASSES")) {
    try {
      opts.max_passes = std::stoull(cap);
    } catch (const std::logic_error&) {
      throw UsageError("APDFILTER_MAX_OPTIMIZE_PASSES must be a number");
    }
  }
  opts.warn = [&err](std::string_view msg) { err << "warning: " << msg << '\n'; };
  return opts;
}

inline std::vector<Domain> prepared_domains(const std::vector<Domain>& domains, bool optimized, std::ostream& err) {
  if (!optimized) return domains;
  return optimize(domains, optimize_options(err)).plain_domains();
}

inline std::vector<Domain> reversed_domains(const std::vector<Domain>& domains) {
  std::vector<Domain> out;
  for (const auto& d : domains) out.push_back(reversed(d));
  return out;
}

/// Filter file plus, for bidirectional use, the backward filter rebuilt from
/// the embedded domain spec.
inline FilterFile load_filter(const std::string& path, std::ostream& err) {
  auto file = read_tdx(read_file(path));
  if (!file.hash_matches) err << "warning: " << path << ": embedded domain spec does not match its hash\n";
  if (!file.source.empty()) {
    auto spec = parse_domain_spec(file.source);
    if (!(spec.alphabet == file.transducer.alphabet()))
      err << "warning: " << path << ": filter alphabet differs from its domain spec\n";
  }
  return file;
}

inline BidirectionalFilter bidirectional_from(const FilterFile& file, std::ostream& err) {
  if (file.source.empty()) throw Error("filter file carries no domain spec; cannot build the backward pass");
  auto spec = parse_domain_spec(file.source);
  auto backward = build_filter(prepared_domains(reversed_domains(spec.domains), file.optimized, err));
  return BidirectionalFilter(file.transducer, std::move(backward));
}

inline std::string render(const std::vector<std::vector<OutputSymbol>>& rows, const std::string& format,
                          std::size_t domain_count, SymbolCoder coder) {
  if (format == "pgm") return emit_pgm(to_gray(rows, RenderPalette{domain_count}));
  return emit_csv(rows, coder);
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-regular-language filtering: stack filter, filter transducers, CA space-time diagrams",
               "apdfilter"};
  app.require_subcommand(1);

  std::string domains_path, output, input, filter_path, format = "csv", method = "transducer", init, rule = "110";
  bool optimize_flag = false, periodic = false, with_domains = false, circular = false, bidi = false;
  std::size_t k = 2, r = 1, width = 0, steps = 0;

  auto* build = app.add_subcommand("build", "Build a filter transducer from a domain spec");
  build->add_option("--domains", domains_path, "Domain spec file")->required();
  build->add_option("-o,--output", output, "Filter file to write")->required();
  build->add_flag("--optimize", optimize_flag, "Split domain states before building");

  auto* opt = app.add_subcommand("optimize", "Write state-split domains that resynchronize unambiguously");
  opt->add_option("--domains", domains_path, "Domain spec file")->required();
  opt->add_option("-o,--output", output, "Domain spec file to write")->required();

  auto* stack = app.add_subcommand("stack", "Maximal-substring cover via the stack algorithm");
  stack->add_option("--domains", domains_path, "Domain spec file")->required();
  stack->add_option("--input", input, "STRING or @file")->required();
  stack->add_flag("--periodic", periodic, "Treat the input as one period of a bi-infinite string");
  stack->add_flag("--with-domains", with_domains, "Append the accepting domain indices to each interval");
  stack->add_option("-o,--output", output, "Output file (default stdout)");

  auto* runc = app.add_subcommand("run", "Run a filter transducer over strings");
  runc->add_option("--filter", filter_path, "Filter file")->required();
  runc->add_option("--input", input, "STRING or @file")->required();
  runc->add_flag("--circular", circular, "Periodic boundary: warm up for one lap before recording");
  runc->add_flag("--bidi", bidi, "Combine left-to-right and right-to-left passes");
  runc->add_option("--format", format, "csv or pgm")->check(CLI::IsMember({"csv", "pgm"}));
  runc->add_option("-o,--output", output, "Output file (default stdout)");

  auto* cac = app.add_subcommand("ca", "Evolve a one-dimensional cellular automaton");
  cac->add_option("--k", k, "Alphabet size")->check(CLI::Range(2, 36));
  cac->add_option("--r", r, "Radius")->check(CLI::Range(1, 8));
  cac->add_option("--rule", rule, "Wolfram rule number");
  cac->add_option("--width", width, "Lattice width (random initial conditions)");
  cac->add_option("--steps", steps, "Number of time steps")->required();
  cac->add_option("--init", init, "random:<seed>, word:<w>^<reps> or @file")->required();
  cac->add_option("-o,--output", output, "Diagram file (.pgm renders an image)");

  auto* caf = app.add_subcommand("ca-filter", "Filter every row of a space-time diagram");
  caf->add_option("--method", method, "stack, transducer or bidi")
      ->check(CLI::IsMember({"stack", "transducer", "bidi"}));
  caf->add_option("--filter", filter_path, "Filter file (transducer, bidi)");
  caf->add_option("--domains", domains_path, "Domain spec file (stack)");
  caf->add_option("--input", input, "Diagram file, one row per line")->required();
  caf->add_option("--format", format, "pgm or csv")->check(CLI::IsMember({"csv", "pgm"}));
  caf->add_option("-o,--output", output, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  try {
    if (build->parsed()) {
      const auto text = read_file(domains_path);
      auto spec = parse_domain_spec(text);
      auto filter = build_filter(prepared_domains(spec.domains, optimize_flag, err));
      write_output(output, write_tdx(filter, text, optimize_flag), out);
      err << "states=" << filter.state_count() << ", resyncs=" << filter.resyncs().size() << '\n';
    } else if (opt->parsed()) {
      auto spec = parse_domain_spec(read_file(domains_path));
      auto result = optimize(spec.domains, optimize_options(err));
      std::size_t before = 0, after = 0;
      for (const auto& d : spec.domains) before += d.state_count();
      for (const auto& d : result.domains) after += d.domain.state_count();
      write_output(output, write_domain_spec(spec.alphabet, result.plain_domains()), out);
      err << "states_before=" << before << ", states_after=" << after << '\n';
    } else if (stack->parsed()) {
      auto spec = parse_domain_spec(read_file(domains_path));
      StackFilter filter(spec.domains);
      std::ostringstream text;
      bool first = true;
      for (const auto& w : read_inputs(input, spec.alphabet)) {
        if (!first) text << '\n';
        first = false;
        MaximalCover cover = periodic ? filter.filter_periodic(w) : filter.filter(w);
        if (periodic) text << "whole_string=" << (cover.whole_string ? "true" : "false") << '\n';
        for (const auto& iv : cover.intervals) {
          text << iv.start << ',' << iv.end;
          if (with_domains) {
            text << ',';
            for (std::size_t i = 0; i < iv.domains.size(); ++i) text << (i ? ";" : "") << iv.domains[i];
          }
          text << '\n';
        }
      }
      write_output(output, text.str(), out);
    } else if (runc->parsed()) {
      auto file = load_filter(filter_path, err);
      const auto& t = file.transducer;
      const Scan mode = circular ? Scan::circular : Scan::linear;
      std::vector<std::vector<OutputSymbol>> rows;
      if (bidi) {
        auto f = bidirectional_from(file, err);
        for (const auto& w : read_inputs(input, t.alphabet())) rows.push_back(f.run(w, mode));
        write_output(output, render(rows, format, t.domain_count(), SymbolCoder(f.forward(), &f.backward())), out);
      } else {
        for (const auto& w : read_inputs(input, t.alphabet())) rows.push_back(t.transduce(w, mode));
        write_output(output, render(rows, format, t.domain_count(), SymbolCoder(t)), out);
      }
    } else if (cac->parsed()) {
      ca::BigInt number;
      try {
        number = ca::BigInt(rule);
      } catch (const std::exception&) {
        throw UsageError("rule must be a non-negative integer");
      }
      const auto alphabet = Alphabet::digits(k);
      auto diagram = ca::evolve(ca::rule_from_number(k, r, number), ca::parse_initial(init, alphabet, width), steps);
      const bool image = output.size() > 4 && output.substr(output.size() - 4) == ".pgm";
      write_output(output, image ? emit_pgm(to_gray(diagram.rows, k)) : ca::format_diagram(diagram, alphabet), out);
    } else if (caf->parsed()) {
      const bool csv = format == "csv" && caf->count("--format") > 0;
      const std::string fmt =
          csv || (output.size() > 4 && output.substr(output.size() - 4) == ".csv" && caf->count("--format") == 0)
              ? "csv"
              : "pgm";
      if (method == "stack") {
        if (domains_path.empty()) throw UsageError("--method stack needs --domains");
        auto spec = parse_domain_spec(read_file(domains_path));
        auto diagram = ca::parse_diagram(read_file(input), spec.alphabet);
        auto labels = ca::filter_with_stack(StackFilter(spec.domains), diagram);
        write_output(output, render(labels, fmt, spec.domains.size(), SymbolCoder()), out);
      } else {
        if (filter_path.empty()) throw UsageError("--method " + method + " needs --filter");
        auto file = load_filter(filter_path, err);
        const auto& t = file.transducer;
        auto diagram = ca::parse_diagram(read_file(input), t.alphabet());
        if (method == "bidi") {
          auto f = bidirectional_from(file, err);
          auto labels = ca::filter_bidirectional(f, diagram);
          write_output(output, render(labels, fmt, t.domain_count(), SymbolCoder(f.forward(), &f.backward())), out);
        } else {
          auto labels = ca::filter_with_transducer(t, diagram);
          write_output(output, render(labels, fmt, t.domain_count(), SymbolCoder(t)), out);
        }
      }
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace apd::cli
