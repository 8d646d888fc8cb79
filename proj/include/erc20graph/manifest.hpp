#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "erc20graph/errors.hpp"

namespace erc20graph {

// Run record written next to a command's primary output. It holds the
// argument vector and the fully resolved configuration; replaying the argv
// reproduces the outputs. No timestamps, so reruns are byte-identical.
struct Manifest {
  std::string command;
  std::vector<std::string> argv;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  nlohmann::ordered_json outputs = nlohmann::ordered_json::object();
  nlohmann::ordered_json state = nlohmann::ordered_json::object();

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["tool"] = "erc20graph";
    j["manifest_version"] = 1;
    j["command"] = command;
    j["argv"] = argv;
    j["config"] = config;
    j["outputs"] = outputs;
    j["state"] = state;
    return j;
  }

  static Manifest from_json(const nlohmann::ordered_json& j) {
    Manifest m;
    try {
      if (j.at("tool") != "erc20graph") throw InputError("not an erc20graph manifest");
      if (j.at("manifest_version") != 1) throw InputError("unsupported manifest version");
      m.command = j.at("command").get<std::string>();
      m.argv = j.at("argv").get<std::vector<std::string>>();
      m.config = j.value("config", nlohmann::ordered_json::object());
      m.outputs = j.value("outputs", nlohmann::ordered_json::object());
      m.state = j.value("state", nlohmann::ordered_json::object());
    } catch (const nlohmann::json::exception& e) {
      throw InputError(std::string("malformed manifest: ") + e.what());
    }
    return m;
  }
};

inline std::string manifest_path_for(const std::string& output) { return output + ".manifest.json"; }

inline void write_manifest(const std::string& path, const Manifest& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw RuntimeFailure("cannot write manifest '" + path + "'");
  out << m.to_json().dump(2) << '\n';
}

inline Manifest read_manifest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open manifest '" + path + "'");
  try {
    return Manifest::from_json(nlohmann::ordered_json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("manifest '" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace erc20graph
