#pragma once

#include "gradecalc/suite.hpp"

#include <string>
#include <vector>

namespace gradecalc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitChecksFailed = 1;
inline constexpr int kExitUsage = 2;

struct Options {
  RunConfig run;
  bool group_given = false;
  std::string out;  // file for CSV commands, directory for verify and export
  std::vector<double> times{0.1};
  std::string kernel_type = "riesz";
  double a = 2;
  double s = 2;
  std::string p = "2";
  std::string flavor = "spectral";
  std::string probe_filter;
  std::string artifact;
};

int cmd_group_check(const Options& o);
int cmd_heat(const Options& o);
int cmd_kernel(const Options& o);
int cmd_norm(const Options& o);
int cmd_probe(const Options& o);
int cmd_verify(const Options& o);
int cmd_export(const Options& o);

}  // namespace gradecalc::cli
