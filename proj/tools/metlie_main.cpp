#include <fstream>
#include <iostream>

#include "metlie/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  if (args.empty() || args[0] == "-h" || args[0] == "--help") {
    std::cout << "usage: metlie <verb> [options] <files>\n"
                 "verbs: verify build centre derived signature regular equivalent\n"
                 "       decompose-check invariant isomorphic classify-index2 extract\n"
                 "options: --out FILE  --seed N  --orbit-bound N (default 8)  --format json\n"
                 "exit codes: 0 computed, 1 input error, 2 unsupported case\n";
    return 0;
  }
  metlie::CliResult res = metlie::run_command(args);

  std::string out_path;
  for (size_t i = 0; i + 1 < args.size(); ++i)
    if (args[i] == "--out") out_path = args[i + 1];
  std::string text = res.report.dump(2) + "\n";
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    out << text;
  } else {
    std::cout << text;
  }
  return res.exit_code;
}
