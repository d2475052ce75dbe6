#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "tstack/io.hpp"

namespace {

std::string readAll(const std::string& path) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void writeAll(const std::string& path, const std::string& data) {
  if (path == "-") {
    std::cout << data;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open output file " + path);
  out << data;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tstack: exact calculator for toric Deligne-Mumford stacks"};
  app.require_subcommand(1);

  std::string inputPath = "-";
  std::string outputPath = "-";
  std::string format = "json";
  long long maxDegree = 20;
  long long truncationRadius = 0;
  std::string base = "point";

  const std::vector<std::string> verbs = {"validate", "group",  "torus", "decompose",
                                          "cohomology", "chart", "mtstack"};
  for (const std::string& verb : verbs) {
    CLI::App* sub = app.add_subcommand(verb);
    sub->add_option("-i,--input", inputPath, "input JSON document (- for stdin)");
    sub->add_option("-o,--output", outputPath, "output path (- for stdout)");
    sub->add_option("-f,--format", format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));
    if (verb == "cohomology") {
      sub->add_option("--max-degree", maxDegree, "largest reported cohomological degree");
      sub->add_option("--truncation-radius", truncationRadius,
                      "monomial box radius (0 = automatic)");
      sub->add_option("--base", base, "point or formal")->check(CLI::IsMember({"point", "formal"}));
    }
  }

  CLI11_PARSE(app, argc, argv);
  std::string verb = app.get_subcommands().front()->get_name();

  auto started = std::chrono::steady_clock::now();
  int code = 0;
  try {
    tstack::Json doc;
    try {
      doc = tstack::Json::parse(readAll(inputPath));
    } catch (const nlohmann::json::parse_error& e) {
      throw tstack::Error(tstack::ErrorKind::SchemaError, std::string("invalid JSON: ") + e.what());
    }
    tstack::CommandOptions options;
    options.max_degree = tstack::Rat(maxDegree);
    options.truncation_radius = static_cast<tstack::Index>(truncationRadius);
    options.base = base == "formal" ? tstack::BaseMode::Formal : tstack::BaseMode::Point;
    options.format = format;
    tstack::CommandResult result = tstack::runCommand(verb, doc, options);
    writeAll(outputPath, format == "text" ? result.text : result.report.dump(2) + "\n");
    code = result.exit_code;
  } catch (const tstack::Error& e) {
    tstack::Json err = tstack::Json::object();
    err["schema_version"] = 1;
    err["verb"] = verb;
    err["error"] = tstack::Json::object();
    err["error"]["kind"] = tstack::errorKindName(e.kind());
    err["error"]["message"] = e.what();
    writeAll(outputPath, format == "text" ? std::string(e.what()) + "\n" : err.dump(2) + "\n");
    code = e.kind() == tstack::ErrorKind::SchemaError ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    code = 2;
  }
  auto elapsed =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started);
  std::cerr << verb << " finished in " << elapsed.count() << " ms\n";
  return code;
}
