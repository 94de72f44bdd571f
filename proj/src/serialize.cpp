#include "ocoswitch/serialize.hpp"

namespace oco {

Json set_to_json(const FeasibleSet& set) {
  Json j;
  switch (set.kind) {
    case FeasibleSet::Kind::AllSpace:
      j["kind"] = "all-space";
      j["dim"] = set.dim;
      break;
    case FeasibleSet::Kind::Box:
      j["kind"] = "box";
      j["lower"] = set.lower;
      j["upper"] = set.upper;
      break;
    case FeasibleSet::Kind::Ball:
      j["kind"] = "ball";
      j["center"] = set.center;
      j["radius"] = set.radius;
      break;
  }
  return j;
}

FeasibleSet set_from_json(const Json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "all-space") return FeasibleSet::all_space(j.at("dim").get<int>());
  if (kind == "box")
    return FeasibleSet::box(j.at("lower").get<Vec>(), j.at("upper").get<Vec>());
  if (kind == "ball")
    return FeasibleSet::ball(j.at("center").get<Vec>(),
                             j.at("radius").get<double>());
  throw std::invalid_argument("set_from_json: unknown kind '" + kind + "'");
}

Json instance_to_json(const Instance& inst) {
  Json j;
  j["id"] = inst.id;
  j["T"] = inst.T;
  j["d"] = inst.d;
  j["set"] = set_to_json(inst.set);
  j["x0"] = inst.x0;
  j["switching"] = inst.switching == Switching::Quadratic ? "quadratic" : "linear";
  Json fs = Json::array();
  for (const FunctionModel& f : inst.functions) {
    Json fj;
    switch (f.kind) {
      case FunctionModel::Kind::IsotropicQuadratic:
        fj["kind"] = "isotropic-quadratic";
        fj["a"] = f.a;
        fj["c"] = f.c;
        break;
      case FunctionModel::Kind::DiagonalQuadratic:
        fj["kind"] = "diagonal-quadratic";
        fj["a"] = f.a_diag;
        fj["c"] = f.c;
        break;
      case FunctionModel::Kind::ExternalOracle:
        throw unsupported_operation(
            "instance_to_json: external-oracle functions are not serializable");
    }
    fs.push_back(std::move(fj));
  }
  j["functions"] = std::move(fs);
  return j;
}

Instance instance_from_json(const Json& j) {
  FeasibleSet set = set_from_json(j.at("set"));
  Vec x0 = j.at("x0").get<Vec>();
  std::string sw = j.at("switching").get<std::string>();
  if (sw != "quadratic" && sw != "linear")
    throw std::invalid_argument("instance_from_json: unknown switching '" + sw + "'");

  std::vector<FunctionModel> fs;
  for (const Json& fj : j.at("functions")) {
    std::string kind = fj.at("kind").get<std::string>();
    if (kind == "isotropic-quadratic") {
      fs.push_back(FunctionModel::isotropic_quadratic(fj.at("a").get<double>(),
                                                      fj.at("c").get<Vec>()));
    } else if (kind == "diagonal-quadratic") {
      fs.push_back(FunctionModel::diagonal_quadratic(fj.at("a").get<Vec>(),
                                                     fj.at("c").get<Vec>()));
    } else {
      throw std::invalid_argument("instance_from_json: unknown function kind '" +
                                  kind + "'");
    }
  }

  Instance inst = make_instance(std::move(set), std::move(x0), std::move(fs),
                                sw == "quadratic" ? Switching::Quadratic
                                                  : Switching::Linear,
                                j.value("id", std::string{}));
  if (j.contains("T") && j.at("T").get<int>() != inst.T)
    throw std::invalid_argument("instance_from_json: T does not match functions");
  if (j.contains("d") && j.at("d").get<int>() != inst.d)
    throw std::invalid_argument("instance_from_json: d does not match x0");
  return inst;
}

}  // namespace oco
