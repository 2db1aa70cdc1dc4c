; even counter: x stays a nonnegative even number
(system
  (vars (x Int))
  (init (= x 0))
  (trans (= x' (+ x 2)))
  (error (<= 0 (- (- x) 1))))
