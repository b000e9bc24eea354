// Copyright 2026 The sparselab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SPARSELAB_REPORT_HPP_
#define SPARSELAB_REPORT_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace sparselab {

// %.17g, with "inf", "-inf" and "nan" for non-finite values.
std::string format_double(double x);

std::string csv_escape(const std::string& field);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

void write_csv(std::ostream& os, const Table& t);

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

// 95% Wilson score interval for successes out of trials.
Interval wilson_interval(int successes, int trials, double z = 1.959963984540054);

struct Summary {
  int count = 0;
  double mean = 0.0;
  double median = 0.0;
  double q05 = 0.0;
  double q95 = 0.0;
  double min = 0.0;
  double max = 0.0;
};

// Non-finite values are skipped. Quantiles interpolate linearly.
Summary summarize(std::vector<double> values);

double quantile(std::vector<double> values, double q);

std::string json_string(const std::string& s);
std::string json_number(double x);

}  // namespace sparselab

#endif  // SPARSELAB_REPORT_HPP_
