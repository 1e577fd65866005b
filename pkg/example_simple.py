from petersson_python import census, modforms, petersson, traces
from petersson_python.errors import ParityMismatchError
from petersson_python.characters import character_group


def main() -> None:
    # Delta_{12,1}(1, m) / Delta_{12,1}(1, 1) recovers tau(m) / m^(11/2)
    values = petersson.delta_geometric_many( 12, 1, None, [ ( 1, 1 ), ( 1, 2 ), ( 1, 3 ) ] )
    delta = modforms.oracle_newform( "delta", 10 )
    for m, value in zip( ( 2, 3 ), values[1:] ):
        ratio = value.value.real / values[0].value.real
        print( f"m={ m }: { ratio:.10f} vs { modforms.normalized_eigenvalue( delta, m ):.10f}" )

    # the odd character mod 4 in even weight: the space is zero and the call is refused
    chi = character_group( 4 )[1]
    try:
        petersson.delta_geometric( 2, 4, chi, 1, 1 )
    except ParityMismatchError as e:
        print( f"refused: { e }" )

    # X_0(11) over F_p from the trace formula and from the curve 11a
    for p in ( 2, 3, 5, 7 ):
        print( p, traces.x0_exact( 11, p ), census.count_points_long( p, ( 0, -1, 1, -10, -20 ) ) )

    # Sato-Tate moments over F_101
    for j in range( 3 ):
        print( census.moment( 101, j ).to_dict() )


if __name__ == "__main__":
    main()
