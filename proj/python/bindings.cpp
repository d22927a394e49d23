#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "trematch/behavior.hpp"
#include "trematch/error.hpp"
#include "trematch/format.hpp"
#include "trematch/offline.hpp"
#include "trematch/online.hpp"

namespace py = pybind11;
using namespace trematch;

namespace {

PropSet props_of(const std::string &letters) {
  PropSet out = 0;
  for (char c : letters) {
    int k = prop_index(c);
    if (k < 0)
      throw py::value_error(std::string("invalid proposition '") + c + "'");
    out |= prop_bit(k);
  }
  return out;
}

Segment segment_of(Time duration, const std::string &props) {
  if (duration < 1)
    throw py::value_error("duration must be positive");
  return Segment{duration, props_of(props)};
}

py::object limit(const Limit &l) {
  if (l.infinite)
    return py::none();
  return py::make_tuple(l.value, l.strict);
}

py::list zone_list(const ZoneSet &s) {
  py::list out;
  for (const Zone &z : s)
    out.append(z);
  return out;
}

} // namespace

PYBIND11_MODULE(_trematch, m) {
  m.doc() = "Timed pattern matching over Boolean behaviors";

  static py::exception<SyntaxError> syntax_error(m, "SyntaxError",
                                                 PyExc_ValueError);
  static py::exception<ExprSyntaxError> expr_error(m, "ExprSyntaxError",
                                                   syntax_error.ptr());
  static py::exception<BehaviorSyntaxError> behavior_error(
      m, "BehaviorSyntaxError", syntax_error.ptr());
  static py::exception<InvariantViolation> invariant(m, "InvariantViolation",
                                                     PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    auto raise = [](py::handle type, const SyntaxError &e) {
      py::object err = type(e.what());
      err.attr("line") = e.line();
      err.attr("column") = e.column();
      PyErr_SetObject(type.ptr(), err.ptr());
    };
    try {
      if (p)
        std::rethrow_exception(p);
    } catch (const ExprSyntaxError &e) {
      raise(expr_error, e);
    } catch (const BehaviorSyntaxError &e) {
      raise(behavior_error, e);
    } catch (const InvariantViolation &e) {
      PyErr_SetString(invariant.ptr(), e.what());
    }
  });

  py::class_<Zone>(m, "Zone",
                   "Set of match periods (t, t') bounded on t, t' and t'-t. "
                   "Each limit is None or a (value, strict) pair.")
      .def_property_readonly("b_lo", [](const Zone &z) { return limit(z.b_lo()); })
      .def_property_readonly("b_hi", [](const Zone &z) { return limit(z.b_hi()); })
      .def_property_readonly("e_lo", [](const Zone &z) { return limit(z.e_lo()); })
      .def_property_readonly("e_hi", [](const Zone &z) { return limit(z.e_hi()); })
      .def_property_readonly("d_lo", [](const Zone &z) { return limit(z.d_lo()); })
      .def_property_readonly("d_hi", [](const Zone &z) { return limit(z.d_hi()); })
      .def("contains", &contains_point, py::arg("t"), py::arg("t_end"),
           py::arg("den") = 1,
           "Whether (t/den, t_end/den) lies in the zone.")
      .def("includes", &includes, py::arg("other"))
      .def("csv_row", &format_csv_row)
      .def("__str__", &format_human)
      .def("__repr__",
           [](const Zone &z) { return "<Zone " + format_human(z) + ">"; })
      .def(py::self == py::self)
      .def("__hash__", [](const Zone &z) {
        auto k = z.key();
        return py::hash(py::tuple(py::cast(std::vector<Time>(k.begin(), k.end()))));
      });

  m.def("triangle", &make_triangle, py::arg("a"), py::arg("b"),
        "All periods inside the segment [a, b].");

  py::class_<TimedBehavior>(m, "Behavior")
      .def(py::init<>())
      .def("append",
           [](TimedBehavior &b, Time d, const std::string &props) {
             b.push_back(segment_of(d, props));
           },
           py::arg("duration"), py::arg("props") = "")
      .def("__len__", &TimedBehavior::size)
      .def_property_readonly("horizon", &TimedBehavior::horizon)
      .def_property_readonly("segments",
                             [](const TimedBehavior &b) {
                               py::list out;
                               for (const Segment &s : b.segments())
                                 out.append(py::make_tuple(
                                     s.duration, serialize_props(s.props)));
                               return out;
                             })
      .def("__str__", &serialize_behavior)
      .def("__repr__", [](const TimedBehavior &b) {
        return "<Behavior " + serialize_behavior(b) + ">";
      });

  m.def("parse_behavior", &parse_behavior, py::arg("text"));

  py::class_<RegexNode, std::shared_ptr<RegexNode>>(m, "Expr")
      .def_property_readonly("nullable",
                             [](const RegexNode &e) { return nullable(e); })
      .def("__str__", [](const RegexNode &e) { return to_string(e); })
      .def("__repr__",
           [](const RegexNode &e) { return "<Expr " + to_string(e) + ">"; });

  m.def("parse_expr",
        [](const std::string &text) {
          return std::const_pointer_cast<RegexNode>(parse_expr(text));
        },
        py::arg("text"));

  py::class_<ZoneSet>(m, "Matches",
                      "Union of zones, plus whether empty periods match.")
      .def_property_readonly("zones", &zone_list)
      .def_property_readonly("nullable", &ZoneSet::nullable)
      .def("contains", &ZoneSet::contains_point, py::arg("t"),
           py::arg("t_end"), py::arg("den") = 1)
      .def("covers", &ZoneSet::covers, py::arg("zone"))
      .def("__len__", &ZoneSet::size)
      .def("__iter__",
           [](const ZoneSet &s) {
             return py::make_iterator(s.begin(), s.end());
           },
           py::keep_alive<0, 1>())
      .def("to_csv",
           [](const ZoneSet &s) {
             std::string out = csv_header() + "\n";
             for (const Zone &z : s)
               out += format_csv_row(z) + "\n";
             return out;
           })
      .def(py::self == py::self);

  m.def("match",
        [](const TimedBehavior &b, const std::shared_ptr<RegexNode> &e,
           std::optional<std::size_t> cap) {
          py::gil_scoped_release release;
          return match_expr(b, e, {cap});
        },
        py::arg("behavior"), py::arg("expr"), py::arg("fixpoint_cap") = py::none(),
        "All match periods of expr over behavior.");

  py::class_<OnlineMatcher>(m, "OnlineMatcher")
      .def(py::init([](const std::shared_ptr<RegexNode> &e,
                       std::optional<std::size_t> cap) {
             return OnlineMatcher(e, cap);
           }),
           py::arg("expr"), py::arg("fixpoint_cap") = py::none())
      .def("feed",
           [](OnlineMatcher &m, Time d, const std::string &props) {
             Segment s = segment_of(d, props);
             return zone_list(m.feed(s));
           },
           py::arg("duration"), py::arg("props") = "",
           "Consumes a segment; returns the zones it confirms.")
      .def("flush", [](OnlineMatcher &m) { return zone_list(m.flush()); })
      .def_property_readonly("frontier", &OnlineMatcher::frontier)
      .def_property_readonly("segments_seen", &OnlineMatcher::segments_seen)
      .def_property_readonly("state_size", &OnlineMatcher::state_size);
}
