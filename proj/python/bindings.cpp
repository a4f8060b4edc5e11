// Python bindings for the evidence-combination core. The module mirrors the
// C++ surface: frames and subsets, general mass functions with the exact
// orthogonal sum, the dichotomous and triplet fast paths, and the
// classifier-fusion pipeline. Sequence parameters accept any Python sequence;
// results come back as plain Python containers.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "evicomb/bench.hpp"
#include "evicomb/fusion.hpp"
#include "evicomb/io.hpp"

namespace py = pybind11;
using namespace evicomb;

namespace {

std::string frame_repr(const Frame& f) {
    std::ostringstream out;
    out << "Frame([";
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (i) out << ", ";
        out << '\'' << f.label(i) << '\'';
    }
    out << "])";
    return out.str();
}

std::string subset_repr(const Subset& s) {
    std::ostringstream out;
    out << "Subset({";
    bool first = true;
    for (const std::string& label : s.member_labels()) {
        if (!first) out << ", ";
        out << '\'' << label << '\'';
        first = false;
    }
    out << "})";
    return out.str();
}

std::string triplet_repr(const TripletMass& t) {
    std::ostringstream out;
    out << "TripletMass(a1='" << t.frame().label(t.a1()) << "', a2='"
        << t.frame().label(t.a2()) << "', m1=" << io::format_number(t.m1())
        << ", m2=" << io::format_number(t.m2())
        << ", mt=" << io::format_number(t.mt()) << ")";
    return out.str();
}

std::string dichotomous_repr(const DichotomousMass& d) {
    std::ostringstream out;
    out << "DichotomousMass(focus='" << d.frame().label(d.focus())
        << "', p=" << io::format_number(d.p()) << ", c=" << io::format_number(d.c())
        << ", r=" << io::format_number(d.r()) << ")";
    return out.str();
}

std::string mass_repr(const MassFunction& m) {
    std::ostringstream out;
    out << "MassFunction(" << m.focal_count() << " focal sets on "
        << m.frame().size() << " labels)";
    return out.str();
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Evidence combination: Dempster's orthogonal sum with linear "
              "fast paths for dichotomous and triplet evidence, and a "
              "classifier-fusion pipeline built on them.";
    m.attr("__version__") = "0.1.0";

    // Exceptions, base first so the more specific translators run first.
    auto error = py::register_exception<Error>(m, "Error");
    py::register_exception<FrameError>(m, "FrameError", error);
    py::register_exception<MassError>(m, "MassError", error);
    py::register_exception<FrameMismatchError>(m, "FrameMismatchError", error);
    py::register_exception<TotalConflictError>(m, "TotalConflictError", error);
    py::register_exception<ApproxBreakdownError>(m, "ApproxBreakdownError", error);
    py::register_exception<io::ParseError>(m, "ParseError", error);

    py::class_<Frame>(m, "Frame",
                      "Ordered set of hypothesis labels. Frames have identity "
                      "semantics: two independently built frames are distinct "
                      "even with equal labels.")
        .def(py::init(&Frame::make), py::arg("labels"))
        .def("__len__", &Frame::size)
        .def_property_readonly("labels",
                               [](const Frame& f) { return f.labels(); })
        .def("label", [](const Frame& f, std::size_t i) { return f.label(i); },
             py::arg("index"))
        .def("find", &Frame::find, py::arg("label"),
             "Index of the label, or None when absent.")
        .def("index_of", &Frame::index_of, py::arg("label"),
             "Index of the label; raises FrameError when absent.")
        .def("same_as",
             [](const Frame& a, const Frame& b) { return same_frame(a, b); },
             py::arg("other"))
        .def("__repr__", &frame_repr);

    py::class_<Subset>(m, "Subset",
                       "Subset of one frame's labels, stored as an index "
                       "bitmask.")
        .def(py::init<Frame, std::uint32_t>(), py::arg("frame"), py::arg("bits"))
        .def_static("empty", &Subset::empty, py::arg("frame"))
        .def_static("full", &Subset::full, py::arg("frame"))
        .def_static("of_indices", &Subset::of_indices, py::arg("frame"),
                    py::arg("indices"))
        .def_static("of_labels", &Subset::of_labels, py::arg("frame"),
                    py::arg("labels"))
        .def_property_readonly("bits", &Subset::bits)
        .def_property_readonly("frame", &Subset::frame)
        .def("__len__", &Subset::count)
        .def("is_empty", &Subset::is_empty)
        .def("is_full", &Subset::is_full)
        .def("contains", &Subset::contains, py::arg("index"))
        .def("complement", &Subset::complement)
        .def("member_labels", &Subset::member_labels)
        .def("__repr__", &subset_repr);

    py::class_<MassFunction>(m, "MassFunction",
                             "General basic probability assignment; sparse "
                             "over subset bitmasks.")
        .def_static("from_focal", &MassFunction::from_focal, py::arg("frame"),
                    py::arg("focal"),
                    "Builds from a dict of subset bitmask -> mass.")
        .def_static(
            "from_labels",
            [](Frame frame, const std::vector<std::pair<std::vector<std::string>,
                                                        double>>& focal) {
                MassFunction::FocalMap bits;
                for (const auto& [labels, mass] : focal) {
                    bits[Subset::of_labels(frame, labels).bits()] += mass;
                }
                return MassFunction::from_focal(std::move(frame), std::move(bits));
            },
            py::arg("frame"), py::arg("focal"),
            "Builds from (label list, mass) pairs; repeated subsets add up.")
        .def_static("vacuous", &MassFunction::vacuous, py::arg("frame"))
        .def_property_readonly("frame", &MassFunction::frame)
        .def("focal", [](const MassFunction& f) { return f.focal(); },
             "Dict of subset bitmask -> mass.")
        .def("focal_labels",
             [](const MassFunction& f) {
                 std::vector<std::pair<std::vector<std::string>, double>> out;
                 out.reserve(f.focal_count());
                 for (const auto& [bits, mass] : f.focal()) {
                     out.emplace_back(Subset(f.frame(), bits).member_labels(),
                                      mass);
                 }
                 return out;
             },
             "List of (member labels, mass) per focal set.")
        .def("__len__", &MassFunction::focal_count)
        .def("mass", &MassFunction::mass, py::arg("subset"))
        .def("mass_bits", &MassFunction::mass_bits, py::arg("bits"))
        .def("__repr__", &mass_repr);

    m.def("conflict", &conflict, py::arg("m1"), py::arg("m2"),
          "Total product mass on disjoint focal pairs; 1 means "
          "non-combinable.");
    m.def("combine_pair", &combine_pair, py::arg("m1"), py::arg("m2"),
          "Dempster's orthogonal sum; raises TotalConflictError when the "
          "normalization constant vanishes.");
    m.def(
        "combine_all",
        [](const std::vector<MassFunction>& ms) { return combine_all(ms); },
        py::arg("masses"), "Left fold of combine_pair.");
    m.def("belief", py::overload_cast<const MassFunction&, const Subset&>(&belief),
          py::arg("mass"), py::arg("subset"));
    m.def(
        "belief",
        [](const MassFunction& f, const std::vector<std::string>& labels) {
            return belief(f, Subset::of_labels(f.frame(), labels));
        },
        py::arg("mass"), py::arg("labels"));
    m.def("plausibility",
          py::overload_cast<const MassFunction&, const Subset&>(&plausibility),
          py::arg("mass"), py::arg("subset"));
    m.def(
        "plausibility",
        [](const MassFunction& f, const std::vector<std::string>& labels) {
            return plausibility(f, Subset::of_labels(f.frame(), labels));
        },
        py::arg("mass"), py::arg("labels"));
    m.def("commonality", &commonality, py::arg("mass"), py::arg("subset"));
    m.def("doubt", &doubt, py::arg("mass"), py::arg("subset"));

    py::class_<DichotomousMass>(m, "DichotomousMass",
                                "(p, c, r) evidence: support for one focus, "
                                "support against it, and ignorance.")
        .def(py::init<Frame, std::size_t, double, double, double>(),
             py::arg("frame"), py::arg("focus"), py::arg("p"), py::arg("c"),
             py::arg("r"))
        .def_static("vacuous", &DichotomousMass::vacuous, py::arg("frame"),
                    py::arg("focus"))
        .def_property_readonly("frame", &DichotomousMass::frame)
        .def_property_readonly("focus", &DichotomousMass::focus)
        .def_property_readonly("p", &DichotomousMass::p)
        .def_property_readonly("c", &DichotomousMass::c)
        .def_property_readonly("r", &DichotomousMass::r)
        .def_property_readonly("d", &DichotomousMass::d)
        .def("__repr__", &dichotomous_repr);

    m.def(
        "normalization_repeated",
        [](const std::vector<DichotomousMass>& ds) {
            return normalization_repeated(ds);
        },
        py::arg("chain"),
        "Reciprocal normalization constant of a same-focus chain, in O(n).");
    m.def(
        "combine_repeated",
        [](const std::vector<DichotomousMass>& ds) {
            return combine_repeated(ds);
        },
        py::arg("chain"),
        "Orthogonal sum of a same-focus chain, linear in its length.");

    py::class_<TripletMass>(m, "TripletMass",
                            "Evidence on the two strongest singletons plus "
                            "ignorance; m1 >= m2 always holds.")
        .def(py::init<Frame, std::size_t, std::size_t, double, double, double>(),
             py::arg("frame"), py::arg("a1"), py::arg("a2"), py::arg("m1"),
             py::arg("m2"), py::arg("mt"))
        .def_static("vacuous", &TripletMass::vacuous, py::arg("frame"),
                    py::arg("a1"), py::arg("a2"))
        .def_property_readonly("frame", &TripletMass::frame)
        .def_property_readonly("a1", &TripletMass::a1)
        .def_property_readonly("a2", &TripletMass::a2)
        .def_property_readonly("m1", &TripletMass::m1)
        .def_property_readonly("m2", &TripletMass::m2)
        .def_property_readonly("mt", &TripletMass::mt)
        .def("singleton_mass", &TripletMass::singleton_mass, py::arg("index"))
        .def("focuses_on", &TripletMass::focuses_on, py::arg("index"))
        .def("__repr__", &triplet_repr);

    py::class_<MultiFocusIntermediate>(
        m, "MultiFocusIntermediate",
        "Exact pairwise combination before refocusing: up to four singleton "
        "candidates plus the Theta mass.")
        .def(py::init<Frame, std::vector<std::pair<std::size_t, double>>,
                      double>(),
             py::arg("frame"), py::arg("singletons"), py::arg("theta"))
        .def_property_readonly("frame", &MultiFocusIntermediate::frame)
        .def("singletons",
             [](const MultiFocusIntermediate& i) { return i.singletons(); })
        .def_property_readonly("theta", &MultiFocusIntermediate::theta)
        .def("singleton_mass", &MultiFocusIntermediate::singleton_mass,
             py::arg("index"))
        .def("to_general", &MultiFocusIntermediate::to_general)
        .def("refocus", &MultiFocusIntermediate::refocus);

    py::class_<TripletCombination>(m, "TripletCombination",
                                   "Refocused triplet plus the exact "
                                   "pre-refocus intermediate.")
        .def_readonly("refocused", &TripletCombination::refocused)
        .def_readonly("intermediate", &TripletCombination::intermediate);

    m.def(
        "outstanding",
        [](const Frame& frame, const std::vector<double>& singles) {
            return outstanding(frame, singles);
        },
        py::arg("frame"), py::arg("singleton_masses"),
        "Keeps the two largest singleton masses as focuses and pools the "
        "rest into Theta.");
    m.def("combine_equal", &combine_equal, py::arg("t1"), py::arg("t2"),
          "Exact combination of triplets sharing both focuses.");
    m.def("combine_one_shared", &combine_one_shared, py::arg("t1"),
          py::arg("t2"),
          "Combination of triplets sharing exactly one focus.");
    m.def("combine_disjoint", &combine_disjoint, py::arg("t1"), py::arg("t2"),
          "Combination of triplets with four distinct focuses.");
    m.def("combine_pair_auto", &combine_pair_auto, py::arg("t1"), py::arg("t2"),
          "Dispatches on the focus overlap and returns the refocused "
          "triplet.");
    m.def(
        "fold_combine",
        [](const std::vector<TripletMass>& ts) { return fold_combine(ts); },
        py::arg("triplets"),
        "Left fold of combine_pair_auto, refocusing after every step.");
    m.def(
        "approx_combine",
        [](const std::vector<TripletMass>& ts, double lam) {
            return approx_combine(ts, lam);
        },
        py::arg("triplets"), py::arg("lam") = 0.0,
        "One-shot approximate combination of a shared-first-focus chain; "
        "raises ApproxBreakdownError when a mass leaves [0, 1].");

    m.def("to_general",
          py::overload_cast<const DichotomousMass&>(&to_general),
          py::arg("mass"));
    m.def("to_general", py::overload_cast<const TripletMass&>(&to_general),
          py::arg("mass"));

    // Fusion pipeline -------------------------------------------------------

    py::enum_<FuseMethod>(m, "FuseMethod")
        .value("triplet", FuseMethod::triplet)
        .value("dichotomous", FuseMethod::dichotomous)
        .value("oracle", FuseMethod::oracle);

    py::enum_<NoiseModel>(m, "NoiseModel")
        .value("flat", NoiseModel::flat)
        .value("exponential", NoiseModel::exponential);

    py::class_<ScoreMatrix> score_matrix(m, "ScoreMatrix",
                                         "Per-item, per-classifier scores "
                                         "over one frame of categories.");
    py::class_<ScoreMatrix::Item>(score_matrix, "Item")
        .def(py::init([](std::string id,
                         std::vector<std::pair<std::string, std::vector<double>>>
                             scores) {
                 return ScoreMatrix::Item{std::move(id), std::move(scores)};
             }),
             py::arg("id"), py::arg("scores"))
        .def_readwrite("id", &ScoreMatrix::Item::id)
        .def_readwrite("scores", &ScoreMatrix::Item::scores);
    score_matrix
        .def(py::init(&ScoreMatrix::make), py::arg("categories"),
             py::arg("items"))
        .def_property_readonly("categories", &ScoreMatrix::categories)
        .def_property_readonly(
            "items", [](const ScoreMatrix& s) { return s.items(); })
        .def("classifier_ids", &ScoreMatrix::classifier_ids)
        .def("__len__",
             [](const ScoreMatrix& s) { return s.items().size(); });

    m.def(
        "scores_to_triplet",
        [](const std::vector<double>& scores, const Frame& frame) {
            return scores_to_triplet(scores, frame);
        },
        py::arg("scores"), py::arg("frame"),
        "Normalizes the scores and applies the outstanding rule.");
    m.def(
        "scores_to_dichotomous",
        [](const std::vector<double>& scores, const Frame& frame,
           double ignorance_floor) {
            return scores_to_dichotomous(scores, frame, ignorance_floor);
        },
        py::arg("scores"), py::arg("frame"), py::arg("ignorance_floor") = 0.1,
        "Maps scores to (p, c, r) with the refuting mass discounted so r "
        "stays positive.");

    py::class_<FuseOptions>(m, "FuseOptions")
        .def(py::init([](FuseMethod method, double ignorance_floor,
                         std::size_t oracle_frame_cap) {
                 FuseOptions o;
                 o.method = method;
                 o.ignorance_floor = ignorance_floor;
                 o.oracle_frame_cap = oracle_frame_cap;
                 return o;
             }),
             py::arg("method") = FuseMethod::triplet,
             py::arg("ignorance_floor") = 0.1,
             py::arg("oracle_frame_cap") = 16)
        .def_readwrite("method", &FuseOptions::method)
        .def_readwrite("ignorance_floor", &FuseOptions::ignorance_floor)
        .def_readwrite("oracle_frame_cap", &FuseOptions::oracle_frame_cap);

    py::class_<ItemDecision>(m, "ItemDecision")
        .def_readonly("item", &ItemDecision::item)
        .def_readonly("undecided", &ItemDecision::undecided)
        .def_readonly("category", &ItemDecision::category)
        .def_readonly("combined", &ItemDecision::combined)
        .def_readonly("note", &ItemDecision::note)
        .def("__repr__", [](const ItemDecision& d) {
            std::ostringstream out;
            out << "ItemDecision(item='" << d.item << "', ";
            if (d.undecided) {
                out << "undecided)";
            } else {
                out << "category=" << d.category << ")";
            }
            return out.str();
        });

    py::class_<FusionReport>(m, "FusionReport")
        .def_readonly("method", &FusionReport::method)
        .def_readonly("decisions", &FusionReport::decisions)
        .def_readonly("undecided", &FusionReport::undecided)
        .def_readonly("accuracy", &FusionReport::accuracy)
        .def_readonly("individual_accuracy", &FusionReport::individual_accuracy)
        .def_readonly("combine_steps", &FusionReport::combine_steps)
        .def_readonly("wall_ns", &FusionReport::wall_ns);

    m.def(
        "fuse_item",
        [](const std::string& id,
           const std::vector<std::pair<std::string, std::vector<double>>>& scores,
           const Frame& frame, const FuseOptions& options) {
            return fuse_item(id, scores, frame, options);
        },
        py::arg("item_id"), py::arg("scores"), py::arg("frame"),
        py::arg("options") = FuseOptions{},
        "Fuses one item's classifier scores; total conflict marks the item "
        "undecided instead of raising.");
    m.def("fuse_matrix", &fuse_matrix, py::arg("matrix"),
          py::arg("options") = FuseOptions{},
          "Decisions for every item; no accuracy section.");
    m.def("evaluate", &evaluate, py::arg("matrix"), py::arg("labels"),
          py::arg("options") = FuseOptions{},
          "Fuses and scores against ground-truth labels (item id -> "
          "category label).");

    py::class_<SynthParams>(m, "SynthParams")
        .def(py::init([](std::size_t categories, std::size_t items,
                         std::size_t classifiers, double accuracy,
                         NoiseModel noise, std::uint64_t seed) {
                 SynthParams p;
                 p.categories = categories;
                 p.items = items;
                 p.classifiers = classifiers;
                 p.accuracy = accuracy;
                 p.noise = noise;
                 p.seed = seed;
                 return p;
             }),
             py::arg("categories") = 10, py::arg("items") = 100,
             py::arg("classifiers") = 5, py::arg("accuracy") = 0.7,
             py::arg("noise") = NoiseModel::flat, py::arg("seed") = 0)
        .def_readwrite("categories", &SynthParams::categories)
        .def_readwrite("items", &SynthParams::items)
        .def_readwrite("classifiers", &SynthParams::classifiers)
        .def_readwrite("accuracy", &SynthParams::accuracy)
        .def_readwrite("noise", &SynthParams::noise)
        .def_readwrite("seed", &SynthParams::seed);

    py::class_<SynthWorkload>(m, "SynthWorkload")
        .def_readonly("matrix", &SynthWorkload::matrix)
        .def_readonly("labels", &SynthWorkload::labels);

    m.def("synth_workload", &synth_workload, py::arg("params"),
          "Seeded synthetic classifier ensemble; identical seeds reproduce "
          "identical workloads.");
}
