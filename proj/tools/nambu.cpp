#include "npc/cli/commands.hpp"
#include "npc/cli/model.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw npc::UsageError("cannot open model file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string command_list() {
  std::string out;
  for (const auto& name : npc::command_names()) out += (out.empty() ? "" : ", ") + name;
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact calculus for Nambu-Poisson structures on polynomial charts"};
  app.set_version_flag("--version", "nambu 0.1");

  std::string command;
  npc::CommandOptions opts;
  std::optional<std::string> out_path;

  app.add_option("command", command, "One of: " + command_list())->required();
  app.add_option("model-file", opts.model_path, "Model file")->required();
  app.add_option("args", opts.args, "Command arguments (names or expressions)");
  app.add_flag("--json", opts.json, "Emit a JSON report");
  app.add_option("--degree-bound", opts.degree_bound, "Coefficient degree bound D");
  app.add_option("--family", opts.family, "Test family: coords or quadratics");
  app.add_option("--volume", opts.volume, "Volume binding name");
  app.add_option("--out", out_path, "Write the report to FILE");
  app.add_option("--degree", opts.degree, "Form or chain degree k");
  app.add_option("--start", opts.start, "Flow start point a,b,...");
  app.add_option("--step", opts.step, "Flow step size");
  app.add_option("--steps", opts.steps, "Number of flow steps");
  app.add_option("--tolerance", opts.tolerance, "Flow drift tolerance");
  app.add_flag("--timing", opts.timing, "Report wall-clock time");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const npc::ModelFile model = npc::parse_model(read_file(opts.model_path));
    const npc::CommandReport report = npc::run_command(model, command, opts);
    const std::string& body = opts.json ? report.json : report.text;
    if (out_path) {
      std::ofstream out(*out_path);
      if (!out) throw npc::UsageError("cannot write '" + *out_path + "'");
      out << body;
    } else {
      std::cout << body;
    }
    return report.exit_code;
  } catch (const npc::ParseError& e) {
    std::cerr << opts.model_path << ": " << e.what() << "\n";
    return 2;
  } catch (const npc::UsageError& e) {
    std::cerr << "nambu: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "nambu: " << e.what() << "\n";
    return 2;
  }
}
