/*
 * Copyright 2026 The apart authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "apart/apart.h"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "cannot read '" << path << "'\n";
    std::exit(APART_ERR_INPUT);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct system_handle {
  apart_system* sys = nullptr;
  ~system_handle() { apart_system_free(sys); }
};

apart_system* load_system(const std::string& path, system_handle& holder) {
  std::string text = read_file(path);
  apart_status st = apart_system_parse(text.c_str(), &holder.sys);
  if (st != APART_OK) {
    std::cerr << apart_last_error() << "\n";
    std::exit(st);
  }
  return holder.sys;
}

// Print the result (stdout) or the error (stderr) and pass the status
// through as the exit code.
int finish(apart_status st, char* out, const std::string& to_file = "") {
  if (out) {
    std::string text(out);
    apart_string_free(out);
    if (!text.empty() && text.back() != '\n') text += '\n';
    if (!to_file.empty()) {
      std::ofstream f(to_file, std::ios::binary);
      if (!f) {
        std::cerr << "cannot write '" << to_file << "'\n";
        return APART_ERR_INPUT;
      }
      f << text;
    } else {
      std::cout << text;
    }
  } else if (st != APART_OK) {
    std::cerr << apart_last_error() << "\n";
  }
  return st;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"behavioural apartness of finitely presented systems"};
  app.require_subcommand(1);

  std::string file, x, y, proof_file, out_path;
  std::string style = "covering", format = "text";
  int max_levels = -1;

  auto* cmd_relation = app.add_subcommand("relation", "behavioural classes and all apart pairs");
  cmd_relation->add_option("file", file, "system description")->required();

  auto* cmd_check = app.add_subcommand("check", "decide whether two states are apart");
  cmd_check->add_option("file", file, "system description")->required();
  cmd_check->add_option("x", x, "first state")->required();
  cmd_check->add_option("y", y, "second state")->required();

  auto* cmd_prove = app.add_subcommand("prove", "derive an apartness proof");
  cmd_prove->add_option("file", file, "system description")->required();
  cmd_prove->add_option("x", x, "first state")->required();
  cmd_prove->add_option("y", y, "second state")->required();
  cmd_prove->add_option("--style", style, "covering or basic")
      ->check(CLI::IsMember({"covering", "basic"}));
  cmd_prove->add_option("--format", format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  cmd_prove->add_option("-o,--output", out_path, "write the proof here instead of stdout");

  auto* cmd_verify = app.add_subcommand("verify", "re-check a serialized proof");
  cmd_verify->add_option("file", file, "system description")->required();
  cmd_verify->add_option("proof", proof_file, "proof in JSON form")->required();

  auto* cmd_tower = app.add_subcommand("tower", "apart pairs by refinement depth");
  cmd_tower->add_option("file", file, "system description")->required();
  cmd_tower->add_option("--max", max_levels, "stop after this many levels");

  auto* cmd_cobisim =
      app.add_subcommand("cobisim", "compare weight couplings with behavioural apartness");
  cmd_cobisim->add_option("file", file, "system description")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);  // --help / --version
    }
    app.exit(e);
    return APART_ERR_USAGE;
  }

  system_handle holder;
  char* out = nullptr;

  if (cmd_relation->parsed()) {
    apart_system* sys = load_system(file, holder);
    apart_status st = apart_relation_text(sys, &out);
    return finish(st, out);
  }
  if (cmd_check->parsed()) {
    apart_system* sys = load_system(file, holder);
    apart_status st = apart_check_pair(sys, x.c_str(), y.c_str(), &out);
    return finish(st, out);
  }
  if (cmd_prove->parsed()) {
    apart_system* sys = load_system(file, holder);
    apart_status st = apart_prove(sys, x.c_str(), y.c_str(),
                                  style == "basic" ? APART_STYLE_BASIC : APART_STYLE_COVERING,
                                  format == "json" ? APART_FORMAT_JSON : APART_FORMAT_TEXT, &out);
    // Only a successful proof goes to -o; refutations stay on stdout.
    return finish(st, out, st == APART_OK ? out_path : "");
  }
  if (cmd_verify->parsed()) {
    apart_system* sys = load_system(file, holder);
    std::string proof = read_file(proof_file);
    apart_status st = apart_verify(sys, proof.c_str(), &out);
    return finish(st, out);
  }
  if (cmd_tower->parsed()) {
    apart_system* sys = load_system(file, holder);
    apart_status st = apart_tower_text(sys, max_levels, &out);
    return finish(st, out);
  }
  if (cmd_cobisim->parsed()) {
    apart_system* sys = load_system(file, holder);
    apart_status st = apart_cobisim_text(sys, &out);
    return finish(st, out);
  }
  return APART_ERR_USAGE;
}
