#ifndef QREFLEX_QREFLEX_HPP
#define QREFLEX_QREFLEX_HPP

#include "qreflex/approx.hpp"
#include "qreflex/errors.hpp"
#include "qreflex/factor.hpp"
#include "qreflex/inverse_eig.hpp"
#include "qreflex/qmatrix.hpp"
#include "qreflex/quaternion.hpp"
#include "qreflex/random.hpp"
#include "qreflex/reflection.hpp"
#include "qreflex/structures.hpp"

#endif  // QREFLEX_QREFLEX_HPP
