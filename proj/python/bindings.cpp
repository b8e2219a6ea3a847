#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "imcsp/classifier.hpp"
#include "imcsp/cli.hpp"

namespace py = pybind11;

PYBIND11_MODULE(_imcsp, m) {
  m.doc() = "Bindings for the imcsp library";

  m.def(
      "run",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = 0;
        {
          py::gil_scoped_release release;
          code = imcsp::run_cli(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run one CLI command in-process; returns (exit_code, stdout, stderr).");

  m.def(
      "classify_label",
      [](int arity, const std::vector<int>& counts) {
        const auto v = imcsp::classify(arity, counts);
        return py::make_tuple(imcsp::verdict_name(v.label), v.certificate);
      },
      py::arg("arity"), py::arg("counts"));
}
