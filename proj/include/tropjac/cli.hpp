#pragma once

#include <CLI11.hpp>

#include <fstream>
#include <sstream>

#include "report.hpp"

namespace tropjac::cli {

enum ExitCode { Ok = 0, InputError = 1, UsageError = 2 };

// Fixed two-column rendering of a JSON report: dotted path, then value.
// Arrays of scalars or arrays stay inline.
inline void render_text(const json &j, const std::string &path, std::ostream &out) {
  auto inline_ok = [](const json &a) {
    for (auto &x : a)
      if (x.is_object())
        return false;
    return true;
  };
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      render_text(it.value(), path.empty() ? it.key() : path + "." + it.key(), out);
    return;
  }
  if (j.is_array() && !inline_ok(j)) {
    for (std::size_t i = 0; i < j.size(); ++i)
      render_text(j[i], path + "[" + std::to_string(i) + "]", out);
    return;
  }
  std::string key = path;
  if (key.size() < 48)
    key.resize(48, ' ');
  out << key << ' ' << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
}

inline void emit(const json &j, const std::string &format, std::ostream &out) {
  if (format == "text")
    render_text(j, "", out);
  else
    out << j.dump() << '\n';
}

inline std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw CLI::ValidationError("cannot read file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline int report_error(const Error &e, std::ostream &err) {
  if (auto *d = dynamic_cast<const DiagnosticError *>(&e)) {
    err << error_name(d->code()) << '\n';
    for (auto &item : d->items())
      err << "  " << item << '\n';
  } else {
    err << e.what() << '\n';
  }
  return InputError;
}

inline int run_command(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Exact analysis of genus-2 tropical curves covering a circle", "tropjac"};
  app.require_subcommand(1);
  std::string format = "json";
  std::string file, file2;
  bool with_split = false;

  auto add = [&](const char *name, const char *help) {
    auto *s = app.add_subcommand(name, help);
    s->add_option("file", file, "cover document (JSON)")->required();
    s->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
    return s;
  };
  auto *analyze_cmd = add("analyze", "full analysis report");
  analyze_cmd->add_flag("--split", with_split, "include the split-Jacobian package when applicable");
  auto *optimal_cmd = add("optimal", "optimality verdict");
  auto *complement_cmd = add("complement", "complementary cover");
  auto *split_cmd = add("split", "splitting isogeny and verification flags");
  auto *factor_cmd = add("factor", "factor the first push-forward through the second");
  factor_cmd->add_option("file2", file2, "second cover document")->required();

  std::vector<const char *> argv{"tropjac"};
  for (auto &a : args)
    argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp &e) {
    out << app.help();
    return Ok;
  } catch (const CLI::ParseError &e) {
    err << "usage error: " << e.what() << '\n' << app.help();
    return UsageError;
  }

  std::string text, text2;
  try {
    text = read_file(file);
    if (factor_cmd->parsed())
      text2 = read_file(file2);
  } catch (const CLI::Error &e) {
    err << "usage error: " << e.what() << '\n';
    return UsageError;
  }

  try {
    CoverData c = parse_cover(text);
    json j;
    if (analyze_cmd->parsed()) {
      j = to_json_value(analyze(c, with_split));
    } else if (optimal_cmd->parsed()) {
      j = to_json_value(is_optimal(c));
    } else if (complement_cmd->parsed()) {
      j = to_json_value(complement_report(complementary_cover(c)));
    } else if (split_cmd->parsed()) {
      j = to_json_value(verify_split_package(c));
    } else if (factor_cmd->parsed()) {
      CoverData c2 = parse_cover(text2);
      auto f = factor_pushforward(c, c2);
      if (!f) {
        j = {{"factorization", "NONE"}};
      } else {
        j = {{"factorization",
              {{"a_sharp", io::int_json(f->a_sharp)},
               {"a_hash", io::int_json(f->a_hash)},
               {"source_length", io::rat_json(f->isogeny.source().pairing()(0, 0))},
               {"target_length", io::rat_json(f->isogeny.target().pairing()(0, 0))}}}};
      }
    }
    emit(j, format, out);
    return Ok;
  } catch (const Error &e) {
    return report_error(e, err);
  }
}

} // namespace tropjac::cli
